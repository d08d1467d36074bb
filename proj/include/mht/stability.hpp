#pragma once

#include "mht/equilibria.hpp"

#include <optional>
#include <string_view>

namespace mht {

enum class StabilityType {
  Saddle,
  Repeller,
  Attractor,
  SaddleNodeAttractor,  ///< det = 0, trace < 0: attracting hyperbolic sector
  SaddleNodeRepeller,   ///< det = 0, trace > 0
  CuspBT,               ///< double zero eigenvalue at the interior double root
  NonHyperbolic,
};

std::string_view to_string(StabilityType type);

struct Classification {
  StabilityType type = StabilityType::NonHyperbolic;
  /// Node (real eigenvalues) vs focus; only meaningful for Repeller/Attractor.
  bool focus = false;
  double det = 0.0;
  double trace = 0.0;
};

/// True for equilibria that attract an open set of initial conditions.
bool is_attracting(StabilityType type);

/// Classification from determinant and trace of a planar linearisation.
Classification classify_linearization(double det, double trace, double eps_class,
                                      bool interior_double = false);

/// Closed-form determinant and trace at an equilibrium of p.
struct DetTrace {
  double det;
  double trace;
};
DetTrace closed_form_det_trace(const Params& p, const Equilibrium& e);

/// Classifies e using closed-form det/trace. Throws std::invalid_argument if
/// e.location is not an equilibrium of p.
Classification classify(const Params& p, const Equilibrium& e, const Tolerances& tol = {});

/// S1: trace-zero value of S at P2, u2 (1 + M - 2 u2) = (1+M-Q+sqrt(Delta)) (Q-sqrt(Delta)) / 2.
/// Defined whenever P2 exists (also in the single-root cases, where it
/// coincides with S3 and S4) and at a double root, where it equals S2.
std::optional<double> hopf_threshold(const Params& p, const Tolerances& tol = {});

/// S2 = Q (1+M-Q) / 2: trace-zero value at the double root; requires |Delta| <= eps_case.
std::optional<double> fold_threshold(const Params& p, const Tolerances& tol = {});

/// S3 = -(1+M-Q)(1+M-2Q): trace-zero value at P3 (M + CQ = 0, 1+M-Q > 0).
std::optional<double> collided_threshold(const Params& p, const Tolerances& tol = {});

/// S4 = sqrt(-M-CQ) (Q - 2 sqrt(-M-CQ)): trace-zero value at P4 (1+M-Q = 0, M+CQ < 0).
std::optional<double> tangent_threshold(const Params& p, const Tolerances& tol = {});

/// (0, C) is the unique omega-limit of the open first quadrant: no interior equilibria
/// with 1+M-Q > 0, M+CQ > 0, Delta < 0, or 1+M-Q <= 0 with M+CQ >= 0.
bool is_global_extinction(const Params& p, const Tolerances& tol = {});

}  // namespace mht

#pragma once

#include "mht/model.hpp"

#include <string_view>
#include <vector>

namespace mht {

/// Identifies an equilibrium within one parameter vector. Every kind occurs at
/// most once, so the kind doubles as the equilibrium id.
enum class EquilibriumKind {
  Origin,          ///< (0, 0)
  PreyK,           ///< (1, 0)
  PreyM,           ///< (M, 0)
  PredatorOnly,    ///< (0, C)
  InteriorLow,     ///< P1, the smaller interior root
  InteriorHigh,    ///< P2 (P3 / P4 in the single-root cases)
  InteriorDouble,  ///< (E, E + C), multiplicity two
};

std::string_view to_string(EquilibriumKind kind);
bool is_interior(EquilibriumKind kind);

struct Equilibrium {
  State location = State::Zero();
  EquilibriumKind kind = EquilibriumKind::Origin;
  int multiplicity = 1;
  /// False for (M, 0) when M <= 0: it lies outside u >= 0 or on the origin.
  bool in_domain = true;
  /// Interior root within eps_case of u = 0 or u = 1.
  bool on_boundary = false;
};

/// Parameter regimes of the interior equilibrium count. S = strong Allee
/// (M > 0), W = weak Allee (M <= 0).
enum class CaseLabel {
  S1ai,    ///< 1+M-Q > 0, Delta < 0: none
  S1aii,   ///< 1+M-Q > 0, Delta > 0: P1, P2
  S1aiii,  ///< 1+M-Q > 0, Delta = 0: (E, E+C) double
  S1b,     ///< 1+M-Q <= 0: none
  W2ai,    ///< 1+M-Q > 0, M+CQ > 0, Delta < 0: none
  W2aii,   ///< 1+M-Q > 0, M+CQ > 0, Delta > 0: P1, P2
  W2aiii,  ///< 1+M-Q > 0, M+CQ > 0, Delta = 0: double
  W2b,     ///< M+CQ < 0 with 1+M-Q != 0: P2 only
  W2c,     ///< 1+M-Q > 0, M+CQ = 0: P3 = (1+M-Q, ...)
  W2d,     ///< 1+M-Q = 0, M+CQ < 0: P4 = (sqrt(-(M+CQ)), ...)
  W2e,     ///< 1+M-Q <= 0, M+CQ >= 0: none
};

std::string_view to_string(CaseLabel label);

/// Number of interior equilibria the case predicts (a double root counts once).
int interior_count(CaseLabel label);

/// Delta = (1+M-Q)^2 - 4(M+CQ).
double discriminant(const Params& p);

CaseLabel case_label(const Params& p, const Tolerances& tol = {});

/// Both roots of d(u) via the cancellation-free formula, ordered low <= high.
/// Only meaningful when Delta >= 0; for Delta < 0 the real part is returned twice.
struct QuadraticRoots {
  double low;
  double high;
};
QuadraticRoots interior_roots(const Params& p);

/// Interior equilibria in the open first quadrant, following the case tree.
std::vector<Equilibrium> interior_equilibria(const Params& p, const Tolerances& tol = {});

/// (0,0), (1,0), (M,0), (0,C) in that order; (M,0) is flagged out of domain
/// when M <= 0.
std::vector<Equilibrium> boundary_equilibria(const Params& p);

/// Boundary followed by interior equilibria.
std::vector<Equilibrium> all_equilibria(const Params& p, const Tolerances& tol = {});

}  // namespace mht

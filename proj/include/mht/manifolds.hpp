#pragma once

#include "mht/flow.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mht {

/// Unit eigenvectors of a saddle, each oriented with a non-negative v
/// component (the "up-right" orientation).
struct SaddleDirections {
  Vector2 stable;
  Vector2 unstable;
  double stable_eigenvalue;
  double unstable_eigenvalue;
};

/// Eigen-directions of a 2x2 matrix with one negative and one positive
/// eigenvalue. Throws std::invalid_argument otherwise.
SaddleDirections saddle_directions(const Matrix2& J);

/// Eigen-directions of the Jacobian at e. Throws std::invalid_argument unless
/// e classifies as a saddle.
SaddleDirections saddle_directions(const Params& p, const Equilibrium& e,
                                   const Tolerances& tol = {});

enum class ManifoldType { Stable, Unstable };
enum class BranchDirection { UpRight, DownLeft };

enum class BranchEnd {
  ReachedEquilibrium,
  LeftBox,
  BudgetExhausted,
  HorizonExceeded,
  StepFailure,
};

std::string_view to_string(BranchEnd end);

struct ManifoldConfig {
  double seed_offset = 1e-6;
  double arc_length_budget = 20.0;
  double box_margin = 0.05;          ///< box is [0, 1+margin] x [0, 1+C+margin]
  double sample_spacing = 1e-3;      ///< maximum polyline segment length
  IntegratorConfig integrator{};
};

struct ManifoldBranch {
  EquilibriumKind base = EquilibriumKind::InteriorLow;
  ManifoldType type = ManifoldType::Stable;
  BranchDirection direction = BranchDirection::UpRight;
  std::vector<State> points;        ///< starts at the seed, base + h * eigenvector
  std::vector<double> arc_length;   ///< cumulative, from the seed
  BranchEnd end = BranchEnd::HorizonExceeded;
  std::optional<EquilibriumKind> reached;
};

/// Traces one branch of the (un)stable manifold of the saddle e. Stable
/// branches are integrated in reversed time. Returns the partial polyline
/// when the arc-length budget runs out (end == BudgetExhausted).
ManifoldBranch trace_manifold(const Params& p, const Equilibrium& e, ManifoldType type,
                              BranchDirection direction, const ManifoldConfig& cfg = {},
                              const Tolerances& tol = {});

/// Raised when the homoclinic gap cannot be evaluated.
class GapUndefined : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Signed distance, measured along the section {v = u + C, u > u2}, between
/// the first crossings of W^u(P1, up-right) and W^s(P1, up-right). Zero at a
/// homoclinic connection; positive when the unstable branch crosses farther
/// from P2 than the stable one.
double homoclinic_gap(const Params& p, const ManifoldConfig& cfg = {},
                      const Tolerances& tol = {});

/// Both stable branches of P1 joined through P1 and clipped to the box
/// `bounds` (Phi = [0,1]^2 by default) at their first exits.
struct Separatrix {
  std::vector<State> points;
  std::size_t saddle_index = 0;  ///< index of P1 within points
};

Separatrix separatrix(const Params& p, const ManifoldConfig& cfg = {}, const Tolerances& tol = {},
                      const Box& bounds = {});

}  // namespace mht

#include "mht/manifolds.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <numbers>

namespace mht {

std::string_view to_string(BranchEnd end) {
  switch (end) {
    case BranchEnd::ReachedEquilibrium: return "ReachedEquilibrium";
    case BranchEnd::LeftBox: return "LeftBox";
    case BranchEnd::BudgetExhausted: return "BudgetExhausted";
    case BranchEnd::HorizonExceeded: return "HorizonExceeded";
    case BranchEnd::StepFailure: return "StepFailure";
  }
  return "?";
}

namespace {

Vector2 orient_up_right(Vector2 w) {
  w.normalize();
  if (w.y() < 0.0 || (w.y() == 0.0 && w.x() < 0.0)) w = -w;
  return w;
}

}  // namespace

SaddleDirections saddle_directions(const Matrix2& J) {
  Eigen::EigenSolver<Matrix2> solver(J);
  const auto values = solver.eigenvalues();
  if (values.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("complex eigenvalues: not a saddle");
  }
  const int neg = values(0).real() < values(1).real() ? 0 : 1;
  const int pos = 1 - neg;
  if (!(values(neg).real() < 0.0 && values(pos).real() > 0.0)) {
    throw std::invalid_argument("eigenvalues do not have opposite signs: not a saddle");
  }
  const auto vectors = solver.eigenvectors().real();
  return {orient_up_right(vectors.col(neg)), orient_up_right(vectors.col(pos)),
          values(neg).real(), values(pos).real()};
}

SaddleDirections saddle_directions(const Params& p, const Equilibrium& e, const Tolerances& tol) {
  if (classify(p, e, tol).type != StabilityType::Saddle) {
    throw std::invalid_argument(std::string(to_string(e.kind)) + " is not a saddle");
  }
  return saddle_directions(jacobian(p, e.location));
}

namespace {

using Step = DenseStep<double, 2>;
using StopHook = std::function<bool(const Step&)>;

ManifoldBranch trace_impl(const Params& p, const Equilibrium& e, ManifoldType type,
                          BranchDirection direction, const ManifoldConfig& cfg,
                          const Tolerances& tol, const StopHook& hook) {
  const SaddleDirections dirs = saddle_directions(p, e, tol);
  Vector2 w = type == ManifoldType::Stable ? dirs.stable : dirs.unstable;
  if (direction == BranchDirection::DownLeft) w = -w;

  ManifoldBranch branch;
  branch.base = e.kind;
  branch.type = type;
  branch.direction = direction;
  const State seed = e.location + cfg.seed_offset * w;
  branch.points.push_back(seed);
  branch.arc_length.push_back(0.0);

  std::vector<Equilibrium> targets;
  for (const auto& other : all_equilibria(p, tol)) {
    if (other.in_domain && other.kind != e.kind) targets.push_back(other);
  }
  const double rho = cfg.integrator.rho_eq;
  const double u_max = 1.0 + cfg.box_margin;
  const double v_max = 1.0 + p.alt_food + cfg.box_margin;

  const auto push = [&](const State& s) {
    branch.arc_length.push_back(branch.arc_length.back() + (s - branch.points.back()).norm());
    branch.points.push_back(s);
  };

  bool done = false;
  const auto observer = [&](const Step& step) {
    if (hook && hook(step)) {
      done = true;
      return false;
    }
    // Split the step evenly in time, doubling the split until every chord is
    // within the spacing.
    const double len = (step.y1 - step.y0).norm();
    int pieces = std::max(1, static_cast<int>(std::ceil(len / cfg.sample_spacing)));
    std::vector<State> fresh;
    while (true) {
      fresh.clear();
      State prev = branch.points.back();
      bool fits = true;
      for (int k = 1; k <= pieces && fits; ++k) {
        const State s = k == pieces ? State(step.y1) : State(step(step.t0 + step.h() * k / pieces));
        fits = (s - prev).norm() <= cfg.sample_spacing;
        fresh.push_back(s);
        prev = s;
      }
      if (fits || pieces >= (1 << 16)) break;
      pieces *= 2;
    }
    for (const State& s : fresh) {
      push(s);
      if (s.x() > u_max || s.y() > v_max) {
        branch.end = BranchEnd::LeftBox;
        done = true;
        return false;
      }
      if (branch.arc_length.back() > cfg.arc_length_budget) {
        branch.end = BranchEnd::BudgetExhausted;
        done = true;
        return false;
      }
    }
    for (const auto& t : targets) {
      if ((step.y1 - t.location).norm() < rho && vector_field(p, State(step.y1)).norm() < rho) {
        branch.end = BranchEnd::ReachedEquilibrium;
        branch.reached = t.kind;
        done = true;
        return false;
      }
    }
    return true;
  };
  const auto admissible = [](const Vector2& y) { return y.x() >= 0.0 && y.y() >= 0.0; };
  const double horizon = cfg.integrator.horizon;
  const double t_end = type == ManifoldType::Stable ? -horizon : horizon;
  const auto result = drive([&](const Vector2& y) { return vector_field(p, y); }, Vector2(seed),
                            0.0, t_end, cfg.integrator.step_control(), observer, admissible);
  if (!done) {
    branch.end = result.status == DriveStatus::ReachedEnd ? BranchEnd::HorizonExceeded
                                                          : BranchEnd::StepFailure;
  }
  return branch;
}

}  // namespace

ManifoldBranch trace_manifold(const Params& p, const Equilibrium& e, ManifoldType type,
                              BranchDirection direction, const ManifoldConfig& cfg,
                              const Tolerances& tol) {
  return trace_impl(p, e, type, direction, cfg, tol, {});
}

namespace {

struct SaddlePair {
  Equilibrium low;
  Equilibrium high;
};

std::optional<SaddlePair> saddle_pair(const Params& p, const Tolerances& tol) {
  const auto interior = interior_equilibria(p, tol);
  if (interior.size() != 2) return std::nullopt;
  if (classify(p, interior[0], tol).type != StabilityType::Saddle) return std::nullopt;
  return SaddlePair{interior[0], interior[1]};
}

/// First crossing of {v = u + C, u > u_high} along one branch.
std::optional<State> first_section_crossing(const Params& p, const SaddlePair& pair,
                                            ManifoldType type, const ManifoldConfig& cfg,
                                            const Tolerances& tol) {
  const double C = p.alt_food;
  const double u_high = pair.high.location.x();
  const auto g = [C](const State& s) { return s.y() - s.x() - C; };
  std::optional<State> crossing;
  const StopHook hook = [&](const Step& step) {
    const double g0 = g(step.y0);
    const double g1 = g(step.y1);
    if (g0 == 0.0 || (g0 < 0.0) == (g1 < 0.0)) return false;
    double lo = step.t0;
    double hi = step.t1;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if ((g(step(mid)) < 0.0) == (g0 < 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const State pc = step(hi);
    if (pc.x() <= u_high) return false;
    crossing = pc;
    return true;
  };
  trace_impl(p, pair.low, type, BranchDirection::UpRight, cfg, tol, hook);
  return crossing;
}

}  // namespace

double homoclinic_gap(const Params& p, const ManifoldConfig& cfg, const Tolerances& tol) {
  const auto pair = saddle_pair(p, tol);
  if (!pair) throw GapUndefined("no saddle P1 with a companion P2");
  const auto unstable = first_section_crossing(p, *pair, ManifoldType::Unstable, cfg, tol);
  if (!unstable) throw GapUndefined("unstable branch ends before reaching the section");
  const auto stable = first_section_crossing(p, *pair, ManifoldType::Stable, cfg, tol);
  if (!stable) throw GapUndefined("stable branch ends before reaching the section");
  return std::numbers::sqrt2 * (unstable->x() - stable->x());
}

namespace {

/// Prefix of `points` up to the first exit from `box`, ending on the box edge.
std::vector<State> clip_to_box(const std::vector<State>& points, const Box& box) {
  std::vector<State> out;
  for (const auto& s : points) {
    if (box.contains(s)) {
      out.push_back(s);
      continue;
    }
    if (!out.empty()) {
      const State a = out.back();
      const Vector2 d = s - a;
      double t = 1.0;
      if (s.x() > box.u_max) t = std::min(t, (box.u_max - a.x()) / d.x());
      if (s.x() < box.u_min) t = std::min(t, (box.u_min - a.x()) / d.x());
      if (s.y() > box.v_max) t = std::min(t, (box.v_max - a.y()) / d.y());
      if (s.y() < box.v_min) t = std::min(t, (box.v_min - a.y()) / d.y());
      out.push_back(a + std::clamp(t, 0.0, 1.0) * d);
    }
    break;
  }
  return out;
}

}  // namespace

Separatrix separatrix(const Params& p, const ManifoldConfig& cfg, const Tolerances& tol,
                      const Box& bounds) {
  const auto interior = interior_equilibria(p, tol);
  if (interior.empty() || interior.front().kind != EquilibriumKind::InteriorLow) {
    throw std::invalid_argument("no interior saddle P1");
  }
  const Equilibrium& saddle = interior.front();
  const auto down = trace_manifold(p, saddle, ManifoldType::Stable, BranchDirection::DownLeft,
                                   cfg, tol);
  const auto up = trace_manifold(p, saddle, ManifoldType::Stable, BranchDirection::UpRight, cfg,
                                 tol);
  const auto down_clipped = clip_to_box(down.points, bounds);
  const auto up_clipped = clip_to_box(up.points, bounds);

  Separatrix sep;
  sep.points.assign(down_clipped.rbegin(), down_clipped.rend());
  sep.saddle_index = sep.points.size();
  sep.points.push_back(saddle.location);
  sep.points.insert(sep.points.end(), up_clipped.begin(), up_clipped.end());
  return sep;
}

}  // namespace mht

#pragma once

#include "mht/dopri5.hpp"
#include "mht/equilibria.hpp"
#include "mht/geometry.hpp"
#include "mht/stability.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace mht {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double max_step = 10.0;
  double horizon = 1e5;        ///< tau_max
  double rho_eq = 1e-6;        ///< equilibrium convergence radius (state and field norm)
  double rho_cyc = 1e-7;       ///< return-map fixed point tolerance
  double escape_bound = 1e3;   ///< |u| or |v| beyond this counts as leaving the domain

  /// Throws ParameterError for non-positive entries or rel_tol < 1e-13.
  void validate() const;
  StepControl step_control() const;
};

enum class Termination {
  ReachedEquilibrium,
  ReachedCycle,
  HorizonExceeded,
  LeftDomain,
  StepFailure,  ///< step-size underflow or step budget exhausted
};

std::string_view to_string(Termination t);

struct TrajectorySample {
  double tau;
  State state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::HorizonExceeded;
  std::optional<EquilibriumKind> equilibrium;  ///< set for ReachedEquilibrium
};

struct AttractorLabel {
  enum class Tag { Equilibrium, LimitCycle, Undecided };
  Tag tag = Tag::Undecided;
  EquilibriumKind equilibrium = EquilibriumKind::Origin;  ///< valid when tag == Equilibrium

  static AttractorLabel undecided() { return {}; }
  static AttractorLabel limit_cycle() { return {Tag::LimitCycle, EquilibriumKind::Origin}; }
  static AttractorLabel at(EquilibriumKind kind) { return {Tag::Equilibrium, kind}; }

  bool operator==(const AttractorLabel& o) const {
    return tag == o.tag && (tag != Tag::Equilibrium || equilibrium == o.equilibrium);
  }
};

std::string to_string(const AttractorLabel& label);

struct Cycle {
  double period = 0.0;
  std::vector<State> polyline;  ///< one lap, starting and ending on the section
  State crossing = State::Zero();  ///< fixed point of the return map
};

/// A crossing of the return-map section {v = u + C, u > u_anchor}.
struct SectionCrossing {
  double tau;
  State point;
  double offset;  ///< distance from the anchor along the section
};

/// Precomputed equilibria and classifications for one parameter vector, used
/// to integrate and classify many initial conditions. Immutable after
/// construction and safe to share between threads.
class FlowModel {
public:
  explicit FlowModel(const Params& p, const IntegratorConfig& cfg = {},
                     const Tolerances& tol = {});

  const Params& params() const { return params_; }
  const IntegratorConfig& config() const { return cfg_; }
  const Tolerances& tolerances() const { return tol_; }

  /// In-domain equilibria with their classifications (same order).
  const std::vector<Equilibrium>& equilibria() const { return equilibria_; }
  const std::vector<Classification>& classifications() const { return classes_; }

  const Equilibrium* find(EquilibriumKind kind) const;
  const Classification* classification(EquilibriumKind kind) const;

  /// Interior equilibrium that anchors the return-map section (P2/P3/P4 or the
  /// double root), if any.
  const Equilibrium* anchor() const;

  /// Adaptive integration, stopping at any equilibrium, the horizon, or on
  /// leaving the domain.
  Trajectory integrate(const State& s0) const;

  /// omega-limit of s0: an attracting equilibrium, a stable limit cycle
  /// around the anchor, or Undecided.
  AttractorLabel classify_omega_limit(const State& s0) const;

  /// Return-map search for a stable limit cycle from `seed`.
  std::optional<Cycle> find_limit_cycle(const State& seed) const;

  /// A seed just off the anchor along the section, or nullopt without an anchor.
  std::optional<State> default_cycle_seed() const;

private:
  struct Outcome;
  Outcome run(const State& s0, bool record, bool detect_cycle, bool attractors_only) const;

  Params params_;
  IntegratorConfig cfg_;
  Tolerances tol_;
  std::vector<Equilibrium> equilibria_;
  std::vector<Classification> classes_;
  int anchor_index_ = -1;
};

Trajectory integrate(const Params& p, const State& s0, const IntegratorConfig& cfg = {});
AttractorLabel classify_omega_limit(const Params& p, const State& s0,
                                    const IntegratorConfig& cfg = {});
std::optional<Cycle> find_limit_cycle(const Params& p, const State& seed,
                                      const IntegratorConfig& cfg = {});

}  // namespace mht

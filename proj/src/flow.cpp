#include "mht/flow.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mht {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0 && abs_tol > 0 && max_step > 0 && horizon > 0 && rho_eq > 0 &&
        rho_cyc > 0 && escape_bound > 0)) {
    throw ParameterError("integrator settings must all be positive");
  }
  if (rel_tol < 1e-13) throw ParameterError("rel_tol must be at least 1e-13");
}

StepControl IntegratorConfig::step_control() const {
  StepControl ctl;
  ctl.rel_tol = rel_tol;
  ctl.abs_tol = abs_tol;
  ctl.max_step = max_step;
  return ctl;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ReachedEquilibrium: return "ReachedEquilibrium";
    case Termination::ReachedCycle: return "ReachedCycle";
    case Termination::HorizonExceeded: return "HorizonExceeded";
    case Termination::LeftDomain: return "LeftDomain";
    case Termination::StepFailure: return "StepFailure";
  }
  return "?";
}

std::string to_string(const AttractorLabel& label) {
  switch (label.tag) {
    case AttractorLabel::Tag::Equilibrium: return std::string(to_string(label.equilibrium));
    case AttractorLabel::Tag::LimitCycle: return "LimitCycle";
    case AttractorLabel::Tag::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

constexpr double kSampleSpacing = 5e-3;
// Crossings closer than this to the anchor never count as a cycle.
constexpr double kMinCycleOffsetFactor = 100.0;

double section_value(const State& s, double C) { return s.y() - s.x() - C; }

/// Time in [t0, t1] at which the section value changes sign, by bisection on
/// the dense output.
template <typename Step>
double locate_crossing(const Step& step, double C) {
  double lo = step.t0;
  double hi = step.t1;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (section_value(step(mid), C) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

struct FlowModel::Outcome {
  Termination termination = Termination::HorizonExceeded;
  std::optional<EquilibriumKind> equilibrium;
  std::vector<TrajectorySample> samples;
  std::vector<SectionCrossing> crossings;
};

FlowModel::FlowModel(const Params& p, const IntegratorConfig& cfg, const Tolerances& tol)
    : params_(p), cfg_(cfg), tol_(tol) {
  validate(p);
  cfg.validate();
  for (const auto& e : all_equilibria(p, tol)) {
    if (!e.in_domain) continue;
    // (0,0) coincides with (M,0) when M = 0; PreyM is already flagged out of domain.
    equilibria_.push_back(e);
    classes_.push_back(classify(p, e, tol));
  }
  for (std::size_t i = 0; i < equilibria_.size(); ++i) {
    const auto kind = equilibria_[i].kind;
    if (kind == EquilibriumKind::InteriorHigh || kind == EquilibriumKind::InteriorDouble) {
      anchor_index_ = static_cast<int>(i);
    }
  }
}

const Equilibrium* FlowModel::find(EquilibriumKind kind) const {
  for (const auto& e : equilibria_) {
    if (e.kind == kind) return &e;
  }
  return nullptr;
}

const Classification* FlowModel::classification(EquilibriumKind kind) const {
  for (std::size_t i = 0; i < equilibria_.size(); ++i) {
    if (equilibria_[i].kind == kind) return &classes_[i];
  }
  return nullptr;
}

const Equilibrium* FlowModel::anchor() const {
  return anchor_index_ < 0 ? nullptr : &equilibria_[static_cast<std::size_t>(anchor_index_)];
}

std::optional<State> FlowModel::default_cycle_seed() const {
  const Equilibrium* a = anchor();
  if (a == nullptr) return std::nullopt;
  return State(a->location + State(1e-3, 1e-3));
}

FlowModel::Outcome FlowModel::run(const State& s0, bool record, bool detect_cycle,
                                  bool attractors_only) const {
  Outcome out;
  const double C = params_.alt_food;
  const double rho = cfg_.rho_eq;

  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < equilibria_.size(); ++i) {
    if (!attractors_only || is_attracting(classes_[i].type)) targets.push_back(i);
  }
  const auto converged = [&](const State& y) -> const Equilibrium* {
    for (std::size_t i : targets) {
      const auto& e = equilibria_[i];
      if ((y - e.location).norm() < rho && vector_field(params_, y).norm() < rho) return &e;
    }
    return nullptr;
  };

  if (record) out.samples.push_back({0.0, s0});
  if (const Equilibrium* e = converged(s0)) {
    out.termination = Termination::ReachedEquilibrium;
    out.equilibrium = e->kind;
    return out;
  }

  const Equilibrium* anchor_eq = detect_cycle ? anchor() : nullptr;
  const double min_offset = kMinCycleOffsetFactor * rho;

  const auto rhs = [this](const Vector2& y) { return vector_field(params_, y); };
  const auto admissible = [](const Vector2& y) { return y.x() >= 0.0 && y.y() >= 0.0; };

  bool stopped = false;
  const auto observer = [&](const DenseStep<double, 2>& step) {
    const State& y = step.y1;
    if (record) {
      const double len = (step.y1 - step.y0).norm();
      const int pieces = std::max(1, static_cast<int>(std::ceil(len / kSampleSpacing)));
      for (int k = 1; k < pieces; ++k) {
        const double t = step.t0 + step.h() * k / pieces;
        const State s = step(t);
        // The interpolant may dip below an axis the accepted states respect.
        if (s.x() >= 0.0 && s.y() >= 0.0) out.samples.push_back({t, s});
      }
      out.samples.push_back({step.t1, y});
    }
    if (std::abs(y.x()) > cfg_.escape_bound || std::abs(y.y()) > cfg_.escape_bound) {
      out.termination = Termination::LeftDomain;
      stopped = true;
      return false;
    }
    if (anchor_eq != nullptr && section_value(step.y0, C) < 0.0 && section_value(y, C) >= 0.0) {
      const double tc = locate_crossing(step, C);
      const State pc = step(tc);
      if (pc.x() > anchor_eq->location.x()) {
        const double offset = std::numbers::sqrt2 * (pc.x() - anchor_eq->location.x());
        out.crossings.push_back({tc, pc, offset});
        const std::size_t n = out.crossings.size();
        if (n >= 2) {
          const double diff = std::abs(offset - out.crossings[n - 2].offset);
          if (diff < cfg_.rho_cyc && offset > min_offset && diff <= 1e-3 * offset) {
            out.termination = Termination::ReachedCycle;
            stopped = true;
            return false;
          }
        }
      }
    }
    if (const Equilibrium* e = converged(y)) {
      out.termination = Termination::ReachedEquilibrium;
      out.equilibrium = e->kind;
      stopped = true;
      return false;
    }
    return true;
  };

  const auto result = drive(rhs, s0, 0.0, cfg_.horizon, cfg_.step_control(), observer, admissible);
  if (!stopped) {
    out.termination = result.status == DriveStatus::ReachedEnd ? Termination::HorizonExceeded
                                                                : Termination::StepFailure;
  }
  return out;
}

Trajectory FlowModel::integrate(const State& s0) const {
  auto outcome = run(s0, true, false, false);
  Trajectory t;
  t.samples = std::move(outcome.samples);
  t.termination = outcome.termination;
  t.equilibrium = outcome.equilibrium;
  return t;
}

AttractorLabel FlowModel::classify_omega_limit(const State& s0) const {
  const auto outcome = run(s0, false, anchor() != nullptr, true);
  switch (outcome.termination) {
    case Termination::ReachedEquilibrium:
      return AttractorLabel::at(*outcome.equilibrium);
    case Termination::ReachedCycle:
      return AttractorLabel::limit_cycle();
    default:
      return AttractorLabel::undecided();
  }
}

std::optional<Cycle> FlowModel::find_limit_cycle(const State& seed) const {
  const Equilibrium* anchor_eq = anchor();
  if (anchor_eq == nullptr) return std::nullopt;
  const auto outcome = run(seed, false, true, true);
  if (outcome.termination != Termination::ReachedCycle) return std::nullopt;

  // One more lap from the converged crossing, recorded densely.
  const double C = params_.alt_food;
  const State start = outcome.crossings.back().point;
  Cycle cycle;
  cycle.crossing = start;
  cycle.polyline.push_back(start);
  bool closed = false;
  bool first_step = true;
  const auto rhs = [this](const Vector2& y) { return vector_field(params_, y); };
  const auto admissible = [](const Vector2& y) { return y.x() >= 0.0 && y.y() >= 0.0; };
  const auto observer = [&](const DenseStep<double, 2>& step) {
    const bool crosses = !first_step && section_value(step.y0, C) < 0.0 &&
                         section_value(step.y1, C) >= 0.0;
    first_step = false;
    const double t_end = crosses ? locate_crossing(step, C) : step.t1;
    const double len = (step(t_end) - step.y0).norm();
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / kSampleSpacing)));
    for (int k = 1; k <= pieces; ++k) {
      cycle.polyline.push_back(step(step.t0 + (t_end - step.t0) * k / pieces));
    }
    if (crosses && step(t_end).x() > anchor_eq->location.x()) {
      cycle.period = t_end;
      closed = true;
      return false;
    }
    return true;
  };
  drive(rhs, Vector2(start), 0.0, cfg_.horizon, cfg_.step_control(), observer, admissible);
  if (!closed) return std::nullopt;
  return cycle;
}

Trajectory integrate(const Params& p, const State& s0, const IntegratorConfig& cfg) {
  return FlowModel(p, cfg).integrate(s0);
}

AttractorLabel classify_omega_limit(const Params& p, const State& s0,
                                    const IntegratorConfig& cfg) {
  return FlowModel(p, cfg).classify_omega_limit(s0);
}

std::optional<Cycle> find_limit_cycle(const Params& p, const State& seed,
                                      const IntegratorConfig& cfg) {
  return FlowModel(p, cfg).find_limit_cycle(seed);
}

}  // namespace mht

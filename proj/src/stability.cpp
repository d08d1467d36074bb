#include "mht/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mht {

std::string_view to_string(StabilityType type) {
  switch (type) {
    case StabilityType::Saddle: return "Saddle";
    case StabilityType::Repeller: return "Repeller";
    case StabilityType::Attractor: return "Attractor";
    case StabilityType::SaddleNodeAttractor: return "SaddleNodeAttractor";
    case StabilityType::SaddleNodeRepeller: return "SaddleNodeRepeller";
    case StabilityType::CuspBT: return "CuspBT";
    case StabilityType::NonHyperbolic: return "NonHyperbolic";
  }
  return "?";
}

bool is_attracting(StabilityType type) {
  return type == StabilityType::Attractor || type == StabilityType::SaddleNodeAttractor;
}

Classification classify_linearization(double det, double trace, double eps,
                                      bool interior_double) {
  Classification c;
  c.det = det;
  c.trace = trace;
  c.focus = trace * trace - 4.0 * det < 0.0;
  if (det < -eps) {
    c.type = StabilityType::Saddle;
  } else if (det > eps) {
    if (trace < -eps) {
      c.type = StabilityType::Attractor;
    } else if (trace > eps) {
      c.type = StabilityType::Repeller;
    } else {
      c.type = StabilityType::NonHyperbolic;
    }
  } else if (trace < -eps) {
    c.type = StabilityType::SaddleNodeAttractor;
  } else if (trace > eps) {
    c.type = StabilityType::SaddleNodeRepeller;
  } else {
    c.type = interior_double ? StabilityType::CuspBT : StabilityType::NonHyperbolic;
  }
  return c;
}

DetTrace closed_form_det_trace(const Params& p, const Equilibrium& e) {
  const double M = p.allee_threshold;
  const double S = p.predator_growth;
  const double Q = p.predation;
  const double C = p.alt_food;
  switch (e.kind) {
    case EquilibriumKind::Origin:
      return {-M * S, S - M};
    case EquilibriumKind::PreyK:
      return {-(1.0 - M) * S, M - 1.0 + S};
    case EquilibriumKind::PreyM:
      return {S * M * (1.0 - M), M * (1.0 - M) + S};
    case EquilibriumKind::PredatorOnly:
      return {S * (M + Q * C), -(M + C * Q + S)};
    case EquilibriumKind::InteriorLow:
    case EquilibriumKind::InteriorHigh:
    case EquilibriumKind::InteriorDouble: {
      const double u = e.location.x();
      return {S * u * (-1.0 - M + Q + 2.0 * u), u * (1.0 + M - 2.0 * u) - S};
    }
  }
  return {0.0, 0.0};
}

Classification classify(const Params& p, const Equilibrium& e, const Tolerances& tol) {
  // The double root sits at E = (1+M-Q)/2 with a residual of order E*Delta/4,
  // which is only bounded by eps_case.
  const double residual = vector_field(p, e.location).norm();
  const double allowed = 1e-8 + e.location.x() * tol.eps_case;
  if (!(residual <= allowed)) {
    throw std::invalid_argument("not an equilibrium of these parameters (residual " +
                                std::to_string(residual) + ")");
  }
  const DetTrace dt = closed_form_det_trace(p, e);
  return classify_linearization(dt.det, dt.trace, tol.eps_class,
                                e.kind == EquilibriumKind::InteriorDouble);
}

std::optional<double> hopf_threshold(const Params& p, const Tolerances& tol) {
  switch (case_label(p, tol)) {
    case CaseLabel::S1aii:
    case CaseLabel::S1aiii:
    case CaseLabel::W2aii:
    case CaseLabel::W2aiii:
    case CaseLabel::W2b:
    case CaseLabel::W2c:
    case CaseLabel::W2d:
      break;
    default:
      return std::nullopt;
  }
  const double b = quadratic_linear(p);
  const double sq = std::sqrt(std::max(0.0, discriminant(p)));
  return 0.5 * (b + sq) * (p.predation - sq);
}

std::optional<double> fold_threshold(const Params& p, const Tolerances& tol) {
  if (std::abs(discriminant(p)) > tol.eps_case) return std::nullopt;
  return 0.5 * p.predation * quadratic_linear(p);
}

std::optional<double> collided_threshold(const Params& p, const Tolerances& tol) {
  if (case_label(p, tol) != CaseLabel::W2c) return std::nullopt;
  const double b = quadratic_linear(p);
  return -b * (1.0 + p.allee_threshold - 2.0 * p.predation);
}

std::optional<double> tangent_threshold(const Params& p, const Tolerances& tol) {
  if (case_label(p, tol) != CaseLabel::W2d) return std::nullopt;
  const double root = std::sqrt(-quadratic_constant(p));
  return root * (p.predation - 2.0 * root);
}

bool is_global_extinction(const Params& p, const Tolerances& tol) {
  switch (case_label(p, tol)) {
    case CaseLabel::S1ai:
    case CaseLabel::S1b:
    case CaseLabel::W2ai:
    case CaseLabel::W2e:
      return true;
    default:
      return false;
  }
}

}  // namespace mht

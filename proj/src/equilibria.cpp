#include "mht/equilibria.hpp"

#include <cmath>

namespace mht {

std::string_view to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::Origin: return "Origin";
    case EquilibriumKind::PreyK: return "PreyK";
    case EquilibriumKind::PreyM: return "PreyM";
    case EquilibriumKind::PredatorOnly: return "PredatorOnly";
    case EquilibriumKind::InteriorLow: return "InteriorLow";
    case EquilibriumKind::InteriorHigh: return "InteriorHigh";
    case EquilibriumKind::InteriorDouble: return "InteriorDouble";
  }
  return "?";
}

bool is_interior(EquilibriumKind kind) {
  return kind == EquilibriumKind::InteriorLow || kind == EquilibriumKind::InteriorHigh ||
         kind == EquilibriumKind::InteriorDouble;
}

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::S1ai: return "S1ai";
    case CaseLabel::S1aii: return "S1aii";
    case CaseLabel::S1aiii: return "S1aiii";
    case CaseLabel::S1b: return "S1b";
    case CaseLabel::W2ai: return "W2ai";
    case CaseLabel::W2aii: return "W2aii";
    case CaseLabel::W2aiii: return "W2aiii";
    case CaseLabel::W2b: return "W2b";
    case CaseLabel::W2c: return "W2c";
    case CaseLabel::W2d: return "W2d";
    case CaseLabel::W2e: return "W2e";
  }
  return "?";
}

int interior_count(CaseLabel label) {
  switch (label) {
    case CaseLabel::S1aii:
    case CaseLabel::W2aii:
      return 2;
    case CaseLabel::S1aiii:
    case CaseLabel::W2aiii:
    case CaseLabel::W2b:
    case CaseLabel::W2c:
    case CaseLabel::W2d:
      return 1;
    default:
      return 0;
  }
}

double discriminant(const Params& p) {
  const double b = quadratic_linear(p);
  return b * b - 4.0 * quadratic_constant(p);
}

CaseLabel case_label(const Params& p, const Tolerances& tol) {
  const double eps = tol.eps_case;
  const double b = quadratic_linear(p);
  const double c = quadratic_constant(p);
  const double delta = discriminant(p);

  const auto by_discriminant = [&](CaseLabel none, CaseLabel two, CaseLabel one) {
    if (std::abs(delta) <= eps) return one;
    return delta < 0 ? none : two;
  };

  if (p.allee_threshold > eps) {
    if (b > eps) return by_discriminant(CaseLabel::S1ai, CaseLabel::S1aii, CaseLabel::S1aiii);
    return CaseLabel::S1b;
  }

  if (b > eps) {
    if (c > eps) return by_discriminant(CaseLabel::W2ai, CaseLabel::W2aii, CaseLabel::W2aiii);
    if (c < -eps) return CaseLabel::W2b;
    return CaseLabel::W2c;
  }
  if (b >= -eps) return c < -eps ? CaseLabel::W2d : CaseLabel::W2e;
  return c < -eps ? CaseLabel::W2b : CaseLabel::W2e;
}

QuadraticRoots interior_roots(const Params& p) {
  const double b = quadratic_linear(p);
  const double c = quadratic_constant(p);
  const double delta = b * b - 4.0 * c;
  if (delta < 0.0) return {0.5 * b, 0.5 * b};
  const double sq = std::sqrt(delta);
  // Larger-magnitude root first, the other one from the product c.
  const double big = 0.5 * (b + std::copysign(sq, b));
  if (big == 0.0) return {0.0, 0.0};
  const double other = c / big;
  return big < other ? QuadraticRoots{big, other} : QuadraticRoots{other, big};
}

namespace {

Equilibrium make_interior(const Params& p, double u, EquilibriumKind kind, int multiplicity,
                          double eps) {
  Equilibrium e;
  e.location = State(u, u + p.alt_food);
  e.kind = kind;
  e.multiplicity = multiplicity;
  e.on_boundary = u < eps || u > 1.0 - eps;
  return e;
}

}  // namespace

std::vector<Equilibrium> interior_equilibria(const Params& p, const Tolerances& tol) {
  const CaseLabel label = case_label(p, tol);
  const QuadraticRoots r = interior_roots(p);
  const double eps = tol.eps_case;
  std::vector<Equilibrium> out;
  switch (label) {
    case CaseLabel::S1aii:
    case CaseLabel::W2aii:
      out.push_back(make_interior(p, r.low, EquilibriumKind::InteriorLow, 1, eps));
      out.push_back(make_interior(p, r.high, EquilibriumKind::InteriorHigh, 1, eps));
      break;
    case CaseLabel::S1aiii:
    case CaseLabel::W2aiii:
      out.push_back(make_interior(p, 0.5 * quadratic_linear(p), EquilibriumKind::InteriorDouble,
                                  2, eps));
      break;
    case CaseLabel::W2b:
    case CaseLabel::W2c:
    case CaseLabel::W2d:
      out.push_back(make_interior(p, r.high, EquilibriumKind::InteriorHigh, 1, eps));
      break;
    default:
      break;
  }
  return out;
}

std::vector<Equilibrium> boundary_equilibria(const Params& p) {
  std::vector<Equilibrium> out(4);
  out[0].location = State(0.0, 0.0);
  out[0].kind = EquilibriumKind::Origin;
  out[1].location = State(1.0, 0.0);
  out[1].kind = EquilibriumKind::PreyK;
  out[2].location = State(p.allee_threshold, 0.0);
  out[2].kind = EquilibriumKind::PreyM;
  out[2].in_domain = p.allee_threshold > 0.0;
  out[3].location = State(0.0, p.alt_food);
  out[3].kind = EquilibriumKind::PredatorOnly;
  return out;
}

std::vector<Equilibrium> all_equilibria(const Params& p, const Tolerances& tol) {
  auto out = boundary_equilibria(p);
  for (auto& e : interior_equilibria(p, tol)) out.push_back(e);
  return out;
}

}  // namespace mht

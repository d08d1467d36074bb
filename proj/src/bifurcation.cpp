#include "mht/bifurcation.hpp"

#include "mht/parallel.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace mht {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

std::vector<double> saddle_node_M(double Q, double C) {
  if (!(Q > 0.0) || !(C > 0.0)) throw ParameterError("Q and C must be positive");
  // 1 + Q - 2 sqrt(Q(1+C)) rewritten to avoid cancellation near zero.
  const double root = std::sqrt(Q * (1.0 + C));
  const double m = ((1.0 - Q) * (1.0 - Q) - 4.0 * Q * C) / (1.0 + Q + 2.0 * root);
  if (m > -1.0 && m < 1.0) return {m};
  return {};
}

std::optional<BtPoint> bt_point(double Q, double C) {
  const auto ms = saddle_node_M(Q, C);
  if (ms.empty()) return std::nullopt;
  const double S = 0.5 * Q * (1.0 + ms.front() - Q);
  if (!(S > 0.0)) return std::nullopt;
  return BtPoint{ms.front(), S};
}

std::vector<LocusSample> hopf_locus(double Q, double C, const std::vector<double>& M_grid,
                                    const Tolerances& tol) {
  std::vector<LocusSample> out;
  for (double M : M_grid) {
    const Params p{M, 1.0, Q, C};
    try {
      validate(p);
    } catch (const ParameterError&) {
      continue;
    }
    auto s = hopf_threshold(p, tol);
    if (!s) s = fold_threshold(p, tol);
    if (s && *s > 0.0) out.push_back({M, *s});
  }
  return out;
}

HomoclinicPoint homoclinic_point(double M, double Q, double C, const HomoclinicConfig& cfg,
                                 const Tolerances& tol) {
  HomoclinicPoint pt;
  pt.M = M;
  Params p{M, 1.0, Q, C};
  try {
    validate(p);
  } catch (const ParameterError& e) {
    pt.failure = e.what();
    return pt;
  }
  if (interior_equilibria(p, tol).size() != 2) {
    pt.failure = "no saddle P1";
    return pt;
  }
  pt.hopf = hopf_threshold(p, tol);
  if (!pt.hopf || !(*pt.hopf > 0.0)) {
    pt.failure = "S1 is not positive";
    return pt;
  }
  const double s1 = *pt.hopf;
  const auto gap = [&](double S) {
    p.predator_growth = S;
    return homoclinic_gap(p, cfg.manifold, tol);
  };

  try {
    // The gap is positive below the homoclinic value and negative above it.
    // Scan outward from S1 on the side its sign points to.
    const double w0 = s1 * cfg.first_offset;
    const double start = s1 - w0;
    const double g_start = gap(start);
    std::optional<double> lo;
    std::optional<double> hi;
    double g_lo = 0.0;
    if (g_start < 0.0) {
      hi = start;
    } else {
      lo = start;
      g_lo = g_start;
    }
    double w = w0;
    for (int k = 0; k < cfg.max_scan && !(lo && hi); ++k) {
      w *= 2.0;
      if (hi) {
        const double s = w < s1 ? s1 - w : s1 * 1e-3;
        const double g = gap(s);
        if (g >= 0.0) {
          lo = s;
          g_lo = g;
        } else {
          hi = s;
        }
        if (w >= s1) break;
      } else {
        const double s = s1 + w;
        const double g = gap(s);
        if (g < 0.0) {
          hi = s;
        } else {
          lo = s;
          g_lo = g;
        }
        if (w >= s1) break;
      }
    }
    if (!lo || !hi) {
      pt.failure = "no sign change of the gap near S1";
      return pt;
    }
    if (std::abs(g_lo) < cfg.gap_tol) {
      pt.S = *lo;
      pt.gap = g_lo;
      return pt;
    }
    double a = *lo;
    double b = *hi;
    for (int i = 0; i < cfg.max_bisections; ++i) {
      const double mid = 0.5 * (a + b);
      const double g = gap(mid);
      if (std::abs(g) < cfg.gap_tol) {
        pt.S = mid;
        pt.gap = g;
        return pt;
      }
      if (g > 0.0) {
        a = mid;
      } else {
        b = mid;
      }
    }
    pt.failure = "bisection did not reach the gap tolerance";
  } catch (const GapUndefined& e) {
    pt.failure = std::string("gap undefined: ") + e.what();
  }
  return pt;
}

std::vector<HomoclinicPoint> homoclinic_locus(double Q, double C,
                                              const std::vector<double>& M_grid,
                                              const HomoclinicConfig& cfg,
                                              const Tolerances& tol) {
  std::vector<HomoclinicPoint> out(M_grid.size());
  parallel_for(
      M_grid.size(), [&](std::size_t i) { out[i] = homoclinic_point(M_grid[i], Q, C, cfg, tol); },
      cfg.threads);
  return out;
}

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::NoInterior: return "NoInterior";
    case RegionLabel::Repeller: return "Repeller";
    case RegionLabel::Cycle: return "Cycle";
    case RegionLabel::Bistable: return "Bistable";
    case RegionLabel::SingleAttractor: return "SingleAttractor";
    case RegionLabel::NearLocus: return "NearLocus";
  }
  return "?";
}

RegionLabel region_classify(const Params& p, const RegionConfig& cfg, const Tolerances& tol) {
  validate(p);
  if (is_global_extinction(p, tol)) return RegionLabel::NoInterior;
  const auto interior = interior_equilibria(p, tol);
  if (interior.empty() || interior.front().kind == EquilibriumKind::InteriorDouble) {
    return RegionLabel::NearLocus;
  }
  for (double m : saddle_node_M(p.predation, p.alt_food)) {
    if (std::abs(p.allee_threshold - m) < cfg.guard_band) return RegionLabel::NearLocus;
  }
  const auto s1 = hopf_threshold(p, tol);
  if (!s1) return RegionLabel::NearLocus;
  if (std::abs(p.predator_growth - *s1) < cfg.guard_band) return RegionLabel::NearLocus;
  if (p.predator_growth > *s1) {
    return interior.size() == 2 ? RegionLabel::Bistable : RegionLabel::SingleAttractor;
  }
  const FlowModel model(p, cfg.integrator, tol);
  const auto seed = model.default_cycle_seed();
  if (seed && model.find_limit_cycle(*seed)) return RegionLabel::Cycle;
  return RegionLabel::Repeller;
}

SotomayorResult sotomayor_check(const Params& p, double h, const Tolerances& tol) {
  validate(p);
  const auto interior = interior_equilibria(p, tol);
  if (interior.size() != 1 || interior.front().kind != EquilibriumKind::InteriorDouble) {
    throw DegenerateFold("no interior double root at these parameters");
  }
  const State x = interior.front().location;
  const Matrix2 J = jacobian(p, x);
  const Eigen::JacobiSVD<Matrix2> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector2 sv = svd.singularValues();
  if (sv(1) > 1e-8 * std::max(1.0, sv(0))) {
    throw DegenerateFold("Jacobian has no zero eigenvalue");
  }
  if (std::abs(J.trace()) < 1e-8) {
    throw DegenerateFold("zero eigenvalue is not simple");
  }
  Vector2 U = svd.matrixV().col(1);
  Vector2 W = svd.matrixU().col(1);
  if (U.y() < 0.0) U = -U;
  if (W.y() < 0.0) W = -W;

  Params plus = p;
  Params minus = p;
  plus.predation += h;
  minus.predation -= h;
  const Vector2 dFdQ = (vector_field(plus, x) - vector_field(minus, x)) / (2.0 * h);
  const Vector2 d2F =
      (vector_field(p, State(x + h * U)) - 2.0 * vector_field(p, x) +
       vector_field(p, State(x - h * U))) /
      (h * h);

  SotomayorResult r;
  r.M = p.allee_threshold;
  r.t1 = W.dot(dFdQ);
  r.t2 = W.dot(d2F);
  r.kernel_residual = (J * U).norm();
  r.right = U;
  r.left = W;
  return r;
}

SotomayorResult sotomayor_check(double Q, double C, double S, double h) {
  const auto ms = saddle_node_M(Q, C);
  if (ms.empty()) throw DegenerateFold("no saddle-node value of M in (-1, 1)");
  return sotomayor_check(Params{ms.front(), S, Q, C}, h);
}

BifurcationDiagram bifurcation_diagram(double Q, double C, Window M_window, Window S_window,
                                       const DiagramConfig& cfg, const Tolerances& tol) {
  if (!(M_window.min < M_window.max) || !(S_window.min < S_window.max)) {
    throw ParameterError("windows must have min < max");
  }
  if (cfg.locus_points < 1 || cfg.region_grid < 0) {
    throw ParameterError("locus_points must be >= 1 and region_grid >= 0");
  }
  BifurcationDiagram d;
  d.Q = Q;
  d.C = C;
  d.M_window = M_window;
  d.S_window = S_window;
  const auto inside_M = [&](double M) { return M >= M_window.min && M <= M_window.max; };
  const auto inside_S = [&](double S) { return S >= S_window.min && S <= S_window.max; };

  for (double m : saddle_node_M(Q, C)) {
    if (inside_M(m)) d.saddle_node.push_back(m);
  }
  if (const auto bt = bt_point(Q, C); bt && inside_M(bt->M) && inside_S(bt->S)) d.bt = bt;

  const auto grid = linspace(M_window.min, M_window.max, cfg.locus_points);
  for (const auto& s : hopf_locus(Q, C, grid, tol)) {
    if (inside_S(s.S)) d.hopf.push_back(s);
  }
  HomoclinicConfig hc = cfg.homoclinic;
  hc.threads = cfg.threads;
  d.homoclinic = homoclinic_locus(Q, C, grid, hc, tol);

  const int n = cfg.region_grid;
  d.regions.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  const double dM = (M_window.max - M_window.min) / std::max(n, 1);
  const double dS = (S_window.max - S_window.min) / std::max(n, 1);
  parallel_for(
      d.regions.size(),
      [&](std::size_t k) {
        const auto i = static_cast<int>(k % static_cast<std::size_t>(n));
        const auto j = static_cast<int>(k / static_cast<std::size_t>(n));
        const double M = M_window.min + (i + 0.5) * dM;
        const double S = S_window.min + (j + 0.5) * dS;
        RegionLabel label = RegionLabel::NearLocus;
        try {
          label = region_classify(Params{M, S, Q, C}, cfg.region, tol);
        } catch (const ParameterError&) {
          label = RegionLabel::NearLocus;
        }
        d.regions[k] = {M, S, label};
      },
      cfg.threads);
  return d;
}

}  // namespace mht

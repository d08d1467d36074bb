// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include "oracles.hpp"

#include "mht/basin.hpp"
#include "mht/bifurcation.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using mht::AttractorLabel;
using mht::EquilibriumKind;
using mht::Params;
using mht::State;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<double> prey(const Params& p, const mht::Tolerances& tol = {}) {
  std::vector<double> u;
  for (const auto& e : mht::interior_equilibria(p, tol)) u.push_back(e.location.x());
  return u;
}

void equilibrium_values(Outcome& o) {
  const auto two = prey(Params{0.04, 0.12, 0.45, 0.07});
  o.require(two.size() == 2 && std::abs(two[0] - 0.17040) < 1e-4 &&
                std::abs(two[1] - 0.41960) < 1e-4,
            "roots at M=0.04");

  mht::Tolerances fold;
  fold.eps_case = 1e-6;
  const auto dbl = mht::interior_equilibria(Params{0.01676030, 0.12919, 0.5, 0.1}, fold);
  o.require(dbl.size() == 1 && dbl[0].kind == EquilibriumKind::InteriorDouble &&
                (dbl[0].location - State(0.25833, 0.35833)).norm() < 1e-3,
            "double root at M*");

  const auto p3 = prey(Params{-0.055, 0.1, 0.55, 0.1});
  o.require(p3.size() == 1 && std::abs(p3[0] - 0.395) < 1e-6, "single root 0.395");
  const auto p4 = prey(Params{-0.1, 0.1, 0.55, 0.1});
  o.require(p4.size() == 1 && std::abs(p4[0] - 0.45) < 1e-6, "positive root 0.45");
  o.detail << "u1=" << two.at(0) << " u2=" << two.at(1);
  if (!dbl.empty()) o.detail << " E=" << dbl[0].location.x();
}

void thresholds(Outcome& o) {
  mht::Tolerances fold;
  fold.eps_case = 1e-6;
  const auto s2 = mht::fold_threshold(Params{0.01676030, 1, 0.5, 0.1}, fold);
  o.require(s2 && std::abs(*s2 - 0.12919012) < 1e-5, "S2 value");

  // Trace of the analytic Jacobian at the equilibrium, S set to the threshold.
  const auto trace_at = [](const Params& p, EquilibriumKind kind) {
    for (const auto& e : mht::interior_equilibria(p)) {
      if (e.kind == kind) return std::abs(mht::jacobian(p, e.location).trace());
    }
    return std::numeric_limits<double>::infinity();
  };
  oracle::ParamSampler rng(2024);
  double worst[4] = {0, 0, 0, 0};
  for (int k = 0; k < 1000; ++k) {
    Params p1 = rng.two_roots();
    p1.predator_growth = *mht::hopf_threshold(p1);
    worst[0] = std::max(worst[0], trace_at(p1, EquilibriumKind::InteriorHigh));

    double Q = rng.uniform(0.05, 0.95), C = rng.uniform(0.01, 0.5);
    const double Mf = mht::saddle_node_M(Q, C).at(0);
    Params p2{Mf, 1, Q, C};
    const auto s = mht::fold_threshold(p2);
    if (s && *s > 0) {
      p2.predator_growth = *s;
      worst[1] = std::max(worst[1], trace_at(p2, EquilibriumKind::InteriorDouble));
    } else {
      worst[1] = std::max(worst[1], s ? 0.0 : 1.0);
    }

    Q = rng.uniform(0.05, 0.95);
    C = rng.uniform(0.01, 0.9);
    Params p3{-C * Q, 1, Q, C};
    if (1 - C * Q - Q > 1e-6) {
      p3.predator_growth = *mht::collided_threshold(p3);
      worst[2] = std::max(worst[2], trace_at(p3, EquilibriumKind::InteriorHigh));
    }

    const double M = rng.uniform(-0.95, -0.05);
    Params p4{M, 1, 1 + M, rng.uniform(0.01, 0.95) * -M / (1 + M)};
    p4.predator_growth = *mht::tangent_threshold(p4);
    worst[3] = std::max(worst[3], trace_at(p4, EquilibriumKind::InteriorHigh));
  }
  for (int i = 0; i < 4; ++i) o.require(worst[i] < 1e-12, "trace residual S" + std::to_string(i + 1));
  o.detail << "S2=" << (s2 ? *s2 : -1.0) << " max|trace| S1..S4=" << worst[0] << "," << worst[1]
           << "," << worst[2] << "," << worst[3];
}

void vieta_and_bisection(Outcome& o) {
  oracle::ParamSampler rng(99);
  double sum_res = 0, prod_res = 0, root_diff = 0;
  int mismatched = 0;
  for (int k = 0; k < 100; ++k) {
    const Params two = rng.two_roots();
    const auto u = prey(two);
    const double b = 1 + two.allee_threshold - two.predation;
    const double c = two.allee_threshold + two.alt_food * two.predation;
    sum_res = std::max(sum_res, std::abs(u[0] + u[1] - b) / std::abs(b));
    prod_res = std::max(prod_res, std::abs(u[0] * u[1] - c) / std::abs(c));

    const Params any = rng(1.0);
    const auto got = prey(any);
    const auto expect = oracle::bisection_roots(any);
    if (got.size() != expect.size()) {
      ++mismatched;
      continue;
    }
    for (std::size_t i = 0; i < got.size(); ++i) root_diff = std::max(root_diff, std::abs(got[i] - expect[i]));
  }
  o.require(sum_res < 1e-12 && prod_res < 1e-12, "Vieta residuals");
  o.require(mismatched == 0 && root_diff < 1e-9, "bisection oracle");
  o.detail << "sum=" << sum_res << " product=" << prod_res << " bisection max diff=" << root_diff;
}

void stability_behaviour(Outcome& o) {
  mht::IntegratorConfig cfg;
  cfg.horizon = 1e4;
  const State s0(0.5, 0.5);
  const Params cyc{-0.055, 0.03, 0.55, 0.1};
  const bool cycle = mht::classify_omega_limit(cyc, s0, cfg) == AttractorLabel::limit_cycle() &&
                     mht::find_limit_cycle(cyc, s0, cfg).has_value();
  o.require(cycle, "limit cycle at S=0.03");

  const auto lands = [&](const Params& p, const State& target) {
    const auto t = mht::integrate(p, s0, cfg);
    const double miss = (t.samples.back().state - target).norm();
    o.detail << " tau=" << t.samples.back().tau << " miss=" << miss;
    return t.termination == mht::Termination::ReachedEquilibrium && t.samples.back().tau <= 1e4 &&
           miss < 1e-4;
  };
  o.require(lands(Params{-0.055, 0.15, 0.55, 0.1}, State(0.395, 0.495)), "P3 at S=0.15");
  o.require(lands(Params{-0.1, 0.19, 0.55, 0.1}, State(0.45, 0.55)), "P4 at S=0.19");
}

void global_extinction(Outcome& o) {
  oracle::ParamSampler rng(5);
  int drawn = 0, perfect = 0;
  while (drawn < 50) {
    const Params p = rng(1.5);
    // Conditions written out directly, without the library predicate.
    const double b = 1 + p.allee_threshold - p.predation;
    const double c = p.allee_threshold + p.alt_food * p.predation;
    const bool none = (b > 1e-6 && c > 1e-6 && b * b - 4 * c < -1e-6) || (b < -1e-6 && c > 1e-6);
    if (!none) continue;
    ++drawn;
    const auto r = mht::compute_basins(p, 50);
    if (mht::basin_fraction(r, AttractorLabel::at(EquilibriumKind::PredatorOnly)) == 1.0) ++perfect;
  }
  o.require(perfect == 50, "every cell labelled (0,C)");
  o.detail << perfect << "/50 rasters fully (0,C)";
}

void separatrix_agreement(Outcome& o) {
  const Params p{0.04, 0.12, 0.45, 0.07};
  const auto r = mht::compute_basins(p, 400);
  const auto sep = mht::separatrix(p);
  const double dev = mht::boundary_vs_separatrix(r, sep);
  o.require(dev <= 2 * r.cell_width(), "deviation within 2 cells");
  o.detail << "deviation=" << dev << " (" << dev / r.cell_width() << " cells)";
}

void bifurcation_structure(Outcome& o) {
  const auto bt = mht::bt_point(0.5, 0.1);
  o.require(bt && std::abs(bt->M - 0.01676) < 1e-4 && std::abs(bt->S - 0.12919) < 1e-4, "BT point");
  if (!bt) return;
  const auto s1 = mht::hopf_threshold(Params{bt->M, 1, 0.5, 0.1});
  const auto s2 = mht::fold_threshold(Params{bt->M, 1, 0.5, 0.1});
  const double gap = s1 && s2 ? std::abs(*s1 - *s2) : 1.0;
  o.require(gap < 1e-8, "|S1 - S2| at M*");

  // Grid on the saddle branch, M in [-0.045, 0.01], away from the BT point.
  std::vector<double> grid;
  for (int k = 0; k < 12; ++k) grid.push_back(-0.045 + 0.005 * k);
  const auto locus = mht::homoclinic_locus(0.5, 0.1, grid);
  int converged = 0;
  bool below = true;
  double margin = 1.0;
  for (const auto& pt : locus) {
    if (!pt.S || !(std::abs(pt.gap) < 1e-6)) continue;
    ++converged;
    below = below && *pt.S < *pt.hopf;
    margin = std::min(margin, *pt.hopf - *pt.S);
  }
  o.require(converged >= 10, "at least 10 converged points");
  o.require(below, "S_hom < S1 on every converged point");
  o.detail << "BT=(" << bt->M << "," << bt->S << ") |S1-S2|=" << gap << " HOM converged "
           << converged << "/" << grid.size() << " min(S1-S_hom)=" << margin;
}

void sotomayor(Outcome& o) {
  oracle::ParamSampler rng(8);
  int done = 0;
  double smallest = 1e9;
  while (done < 5) {
    const double Q = rng.uniform(0.1, 0.9), C = rng.uniform(0.02, 0.5);
    const auto ms = mht::saddle_node_M(Q, C);
    if (ms.empty() || !(1 + ms[0] - Q > 0.05)) continue;
    // S away from S2 so the zero eigenvalue is simple.
    const double S = 0.5 * Q * (1 + ms[0] - Q) + rng.uniform(0.05, 0.3);
    try {
      const auto r = mht::sotomayor_check(Q, C, S);
      smallest = std::min({smallest, std::abs(r.t1), std::abs(r.t2)});
    } catch (const mht::DegenerateFold& e) {
      o.require(false, e.what());
      smallest = 0;
    }
    ++done;
  }
  o.require(smallest > 1e-6, "|t1|, |t2| > 1e-6");
  o.detail << "min |t|=" << smallest << " over 5 (Q,C) pairs";
}

void allee_comparison(Outcome& o) {
  const auto p2 = AttractorLabel::at(EquilibriumKind::InteriorHigh);
  const double strong = mht::basin_fraction(mht::compute_basins(Params{0.04, 0.12, 0.45, 0.07}, 200), p2);
  const double weak = mht::basin_fraction(mht::compute_basins(Params{-0.01, 0.12, 0.45, 0.07}, 200), p2);
  o.require(strong < weak, "strong < weak");
  o.detail << "P2 fraction M=0.04: " << strong << ", M=-0.01: " << weak;
}

void cross_model(Outcome& o) {
  oracle::ParamSampler rng(10);
  mht::StepControl ctl;
  ctl.rel_tol = 1e-10;
  ctl.abs_tol = 1e-12;
  const auto always = [](const auto&) { return true; };
  double worst = 0.0;
  int systems = 0;
  while (systems < 10) {
    const double K = rng.uniform(0.5, 5), n = rng.uniform(0.2, 3), r = rng.uniform(0.2, 3);
    const mht::DimensionalParams d{r, rng.uniform(0.1, 2), rng.uniform(0.1, 1.0) * r / n, n, K,
                                   rng.uniform(-0.5, 0.5) * K, rng.uniform(0.02, 0.5) * K * n};
    Params p;
    try {
      p = mht::nondimensionalize(d);
    } catch (const mht::ParameterError&) {
      continue;
    }
    ++systems;
    const Eigen::Vector2d xy0(rng.uniform(0.1, 1) * K, rng.uniform(0.1, 1) * K * n);
    const double t_end = 40.0 / (K * r);  // tau_end = 40
    std::vector<double> times;
    for (int k = 1; k <= 20; ++k) times.push_back(t_end * k / 20);

    const auto sample = [&](auto&& rhs, const Eigen::Vector2d& y0, double scale) {
      std::vector<Eigen::Vector2d> out;
      std::size_t next = 0;
      const auto obs = [&](const mht::DenseStep<double, 2>& s) {
        while (next < times.size() && times[next] * scale <= s.t1 * (1 + 1e-15)) {
          out.push_back(s(std::min(times[next] * scale, s.t1)));
          ++next;
        }
        return true;
      };
      mht::drive(rhs, y0, 0.0, t_end * scale, ctl, obs, always);
      while (out.size() < times.size()) out.push_back(out.back());
      return out;
    };
    const auto dim = sample([&](const Eigen::Vector2d& y) { return mht::dimensional_vector_field(d, y); },
                            xy0, 1.0);
    const auto nd = sample([&](const Eigen::Vector2d& y) { return mht::vector_field(p, y); },
                           mht::to_nondimensional(d, xy0, 0.0).point, K * r);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const auto mapped = mht::to_nondimensional(d, dim[k], times[k]).point;
      for (int i = 0; i < 2; ++i) {
        const double tol = ctl.abs_tol + ctl.rel_tol * std::abs(nd[k](i));
        worst = std::max(worst, std::abs(mapped(i) - nd[k](i)) / tol);
      }
    }
  }
  o.require(worst <= 10.0, "within 10x integrator tolerance");
  o.detail << "worst deviation " << worst << "x tolerance (rtol 1e-10, atol 1e-12, tau 40)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"equilibrium values", equilibrium_values},
      {"thresholds and trace-zero residuals", thresholds},
      {"Vieta and bisection oracle", vieta_and_bisection},
      {"stability behaviour from (0.5,0.5)", stability_behaviour},
      {"global extinction rasters", global_extinction},
      {"separatrix versus basin boundary", separatrix_agreement},
      {"bifurcation structure at (Q,C)=(0.5,0.1)", bifurcation_structure},
      {"Sotomayor transversality", sotomayor},
      {"strong versus weak Allee basin", allee_comparison},
      {"dimensional equivalence", cross_model},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s: %s (%.1f s)\n", index, o.pass ? "PASS" : "FAIL", name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}

#pragma once

// Independent reference computations shared by the test suites. Nothing here
// calls into the library beyond the Params type.

#include "mht/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Field written out longhand from the model equations.
inline Eigen::Vector2d field(const mht::Params& p, double u, double v) {
  const double M = p.allee_threshold, S = p.predator_growth, Q = p.predation, C = p.alt_food;
  return {u * (1 - u) * (u - M) - Q * u * v, S * v - S * v * v / (u + C)};
}

// Central differences of `field` with step h.
inline Eigen::Matrix2d fd_jacobian(const mht::Params& p, double u, double v, double h = 1e-5) {
  Eigen::Matrix2d J;
  J.col(0) = (field(p, u + h, v) - field(p, u - h, v)) / (2 * h);
  J.col(1) = (field(p, u, v + h) - field(p, u, v - h)) / (2 * h);
  return J;
}

// Roots of d(u) = u^2 - (1+M-Q) u + (M+CQ) on (0, 1) by sign-change scan and
// bisection. A double root is found from a sign-free minimum of |d|.
inline std::vector<double> bisection_roots(const mht::Params& p, double resolution = 1e-10) {
  const double b = 1 + p.allee_threshold - p.predation;
  const double c = p.allee_threshold + p.alt_food * p.predation;
  const auto d = [&](double u) { return u * u - b * u + c; };
  std::vector<double> roots;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    double lo = static_cast<double>(k) / n;
    double hi = static_cast<double>(k + 1) / n;
    if (k == 0) lo = 1e-300;
    double flo = d(lo);
    const double fhi = d(hi);
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if ((flo < 0) == (fhi < 0) || fhi == 0.0) continue;
    while (hi - lo > resolution) {
      const double mid = 0.5 * (lo + hi);
      const double fm = d(mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

// Eigenvalues through Eigen's general solver.
inline Eigen::Vector2cd eigenvalues(const Eigen::Matrix2d& J) {
  return Eigen::EigenSolver<Eigen::Matrix2d>(J, false).eigenvalues();
}

// Random parameters over the model's admissible ranges. Q and C up to `qc_max`.
struct ParamSampler {
  std::mt19937_64 rng;
  explicit ParamSampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  mht::Params operator()(double qc_max = 1.5) {
    return {uniform(-0.99, 0.99), uniform(0.005, 1.0), uniform(0.01, qc_max), uniform(0.01, qc_max)};
  }

  // Two interior roots: draw roots u1 < u2 in (0, 1), then Q, C from Vieta.
  mht::Params two_roots() {
    while (true) {
      const double M = uniform(-0.3, 0.5);
      const double Q = uniform(0.05, 1.0);
      const double C = uniform(0.01, 0.5);
      const mht::Params p{M, uniform(0.01, 0.5), Q, C};
      const double b = 1 + M - Q;
      const double c = M + C * Q;
      const double disc = b * b - 4 * c;
      if (b > 0 && c > 1e-3 && disc > 1e-3) return p;
    }
  }
};

}  // namespace oracle

#pragma once

// Modified May-Holling-Tanner predator-prey model with Allee effect in the
// prey and an alternative food source for the predator.
//
//   du/dtau = u ((1 - u)(u - M) - Q v)
//   dv/dtau = S v (u - v + C) / (u + C)
//
// with (M, S, Q, C) in (-1, 1) x R+^3. The dimensional system it is derived
// from is
//
//   dx/dt = r x (1 - x/K)(x - m) - q x y
//   dy/dt = s y (1 - y / (n x + c))
//
// and the two are related by x = K u, y = K n v, tau = K r t.

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace mht {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

using Vector2 = Vec2<double>;
using Matrix2 = Mat2<double>;

/// A point (u, v) of the nondimensional phase plane: prey and predator density.
using State = Vector2;

/// Raised for parameter vectors outside the admissible set.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Comparison tolerances for measure-zero parameter cases and for
/// hyperbolicity tests.
struct Tolerances {
  double eps_case = 1e-10;   ///< case boundaries such as 1+M-Q = 0 or Delta = 0
  double eps_class = 1e-9;   ///< det/trace sign tests in stability classification
};

/// Nondimensional parameters.
template <typename Scalar>
struct BasicParams {
  Scalar allee_threshold{};   ///< M, in (-1, 1); M > 0 is a strong Allee effect
  Scalar predator_growth{};   ///< S > 0
  Scalar predation{};         ///< Q > 0
  Scalar alt_food{};          ///< C > 0

  template <typename Other>
  BasicParams<Other> cast() const {
    return {static_cast<Other>(allee_threshold), static_cast<Other>(predator_growth),
            static_cast<Other>(predation), static_cast<Other>(alt_food)};
  }

  bool operator==(const BasicParams&) const = default;
};

using Params = BasicParams<double>;

/// Dimensional (ecological) parameters.
template <typename Scalar>
struct BasicDimensionalParams {
  Scalar prey_growth{};        ///< r
  Scalar predator_growth{};    ///< s
  Scalar predation_rate{};     ///< q
  Scalar prey_quality{};       ///< n
  Scalar carrying_capacity{};  ///< K
  Scalar allee_threshold{};    ///< m, may be <= 0
  Scalar alt_food{};           ///< c

  template <typename Other>
  BasicDimensionalParams<Other> cast() const {
    return {static_cast<Other>(prey_growth),     static_cast<Other>(predator_growth),
            static_cast<Other>(predation_rate),  static_cast<Other>(prey_quality),
            static_cast<Other>(carrying_capacity), static_cast<Other>(allee_threshold),
            static_cast<Other>(alt_food)};
  }
};

using DimensionalParams = BasicDimensionalParams<double>;

/// Throws ParameterError unless M in (-1,1) and S, Q, C > 0 (all finite).
inline void validate(const Params& p) {
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.allee_threshold) || !finite(p.predator_growth) || !finite(p.predation) ||
      !finite(p.alt_food)) {
    throw ParameterError("parameters must be finite");
  }
  if (!(p.allee_threshold > -1.0 && p.allee_threshold < 1.0)) {
    throw ParameterError("M = " + std::to_string(p.allee_threshold) + " is outside (-1, 1)");
  }
  if (!(p.predator_growth > 0.0)) throw ParameterError("S must be positive");
  if (!(p.predation > 0.0)) throw ParameterError("Q must be positive");
  if (!(p.alt_food > 0.0)) throw ParameterError("C must be positive");
}

inline void validate(const DimensionalParams& d) {
  if (!(d.prey_growth > 0 && d.predator_growth > 0 && d.predation_rate > 0 &&
        d.prey_quality > 0 && d.carrying_capacity > 0 && d.alt_food > 0)) {
    throw ParameterError("r, s, q, n, K and c must all be positive");
  }
  if (!(std::abs(d.allee_threshold) < d.carrying_capacity)) {
    throw ParameterError("Allee threshold m must satisfy |m| < K");
  }
}

/// C = c/(Kn), S = s/(Kr), Q = nq/r, M = m/K. Throws ParameterError when the
/// input or the result is outside the admissible set.
template <typename Scalar>
BasicParams<Scalar> nondimensionalize(const BasicDimensionalParams<Scalar>& d) {
  validate(d.template cast<double>());
  BasicParams<Scalar> p;
  p.alt_food = d.alt_food / (d.carrying_capacity * d.prey_quality);
  p.predator_growth = d.predator_growth / (d.carrying_capacity * d.prey_growth);
  p.predation = d.prey_quality * d.predation_rate / d.prey_growth;
  p.allee_threshold = d.allee_threshold / d.carrying_capacity;
  validate(p.template cast<double>());
  return p;
}

/// Phase-space point with its time coordinate.
template <typename Scalar>
struct TimedPoint {
  Vec2<Scalar> point;
  Scalar time{};
};

/// (x, y, t) -> (u, v, tau).
template <typename Scalar>
TimedPoint<Scalar> to_nondimensional(const BasicDimensionalParams<Scalar>& d,
                                     const Vec2<Scalar>& xy, Scalar t) {
  const Scalar K = d.carrying_capacity;
  return {Vec2<Scalar>(xy.x() / K, xy.y() / (K * d.prey_quality)), K * d.prey_growth * t};
}

/// (u, v, tau) -> (x, y, t); inverse of to_nondimensional.
template <typename Scalar>
TimedPoint<Scalar> to_dimensional(const BasicDimensionalParams<Scalar>& d,
                                  const Vec2<Scalar>& uv, Scalar tau) {
  const Scalar K = d.carrying_capacity;
  return {Vec2<Scalar>(K * uv.x(), K * d.prey_quality * uv.y()), tau / (K * d.prey_growth)};
}

/// Right-hand side of the nondimensional system.
template <typename Scalar>
Vec2<Scalar> vector_field(const BasicParams<Scalar>& p, const Vec2<Scalar>& s) {
  const Scalar u = s.x();
  const Scalar v = s.y();
  const Scalar M = p.allee_threshold;
  const Scalar C = p.alt_food;
  return {u * ((1 - u) * (u - M) - p.predation * v),
          p.predator_growth * v * (u - v + C) / (u + C)};
}

/// Analytic Jacobian of vector_field.
template <typename Scalar>
Mat2<Scalar> jacobian(const BasicParams<Scalar>& p, const Vec2<Scalar>& s) {
  const Scalar u = s.x();
  const Scalar v = s.y();
  const Scalar M = p.allee_threshold;
  const Scalar S = p.predator_growth;
  const Scalar Q = p.predation;
  const Scalar w = u + p.alt_food;
  Mat2<Scalar> J;
  J << (1 - u) * (u - M) - Q * v + u * (1 + M - 2 * u), -Q * u,
       S * v * v / (w * w), S * (w - 2 * v) / w;
  return J;
}

/// Right-hand side of the dimensional system (x, y) in physical time t.
template <typename Scalar>
Vec2<Scalar> dimensional_vector_field(const BasicDimensionalParams<Scalar>& d,
                                      const Vec2<Scalar>& xy) {
  const Scalar x = xy.x();
  const Scalar y = xy.y();
  return {d.prey_growth * x * (1 - x / d.carrying_capacity) * (x - d.allee_threshold) -
              d.predation_rate * x * y,
          d.predator_growth * y * (1 - y / (d.prey_quality * x + d.alt_food))};
}

/// Linear coefficient 1 + M - Q of the interior equilibrium quadratic
/// d(u) = u^2 - (1+M-Q) u + (M+CQ).
inline double quadratic_linear(const Params& p) {
  return 1.0 + p.allee_threshold - p.predation;
}

/// Constant term M + CQ of the interior equilibrium quadratic.
inline double quadratic_constant(const Params& p) {
  return p.allee_threshold + p.alt_food * p.predation;
}

/// d(u); its roots in (0,1) are the prey coordinates of interior equilibria.
inline double equilibrium_polynomial(const Params& p, double u) {
  return u * u - quadratic_linear(p) * u + quadratic_constant(p);
}

}  // namespace mht

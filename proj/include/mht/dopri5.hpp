#pragma once

// Embedded Dormand-Prince 5(4) Runge-Kutta pair with FSAL and the standard
// fourth-order continuous extension (Hairer, Norsett & Wanner, "Solving ODEs I").

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mht {

struct StepControl {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double max_step = 10.0;
  double initial_step = 0.0;  ///< 0 selects a step from the local derivative
  long max_steps = 50'000'000;
};

/// One accepted step together with its dense-output polynomial.
template <typename Scalar, int Dim>
struct DenseStep {
  using Vector = Eigen::Matrix<Scalar, Dim, 1>;

  Scalar t0{};
  Scalar t1{};
  Vector y0;
  Vector y1;
  Vector r1, r2, r3, r4;

  Scalar h() const { return t1 - t0; }

  /// State at time t in [t0, t1].
  Vector operator()(Scalar t) const {
    const Scalar theta = (t - t0) / (t1 - t0);
    const Scalar theta1 = Scalar(1) - theta;
    return y0 + theta * (r1 + theta1 * (r2 + theta * (r3 + theta1 * r4)));
  }
};

enum class DriveStatus {
  ReachedEnd,     ///< t_end reached
  Stopped,        ///< the observer asked to stop
  StepUnderflow,  ///< step size fell below the roundoff floor
  TooManySteps,
};

template <typename Scalar>
struct DriveResult {
  DriveStatus status = DriveStatus::ReachedEnd;
  Scalar t{};
  long accepted = 0;
  long rejected = 0;
};

namespace detail {
struct Dp5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                          a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                          d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                          d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
};
}  // namespace detail

/// Integrates y' = rhs(y) from t0 towards t_end (which may be smaller than t0
/// for backward integration).
///
/// `admissible(y)` may veto a step end point; a vetoed step is rejected and
/// retried with half the step. `observer(step)` is called after every
/// accepted step and returns false to stop.
template <typename Scalar, int Dim, typename Rhs, typename Observer, typename Admissible>
DriveResult<Scalar> drive(Rhs&& rhs, const Eigen::Matrix<Scalar, Dim, 1>& y_start, Scalar t0,
                          Scalar t_end, const StepControl& ctl, Observer&& observer,
                          Admissible&& admissible) {
  using Vector = Eigen::Matrix<Scalar, Dim, 1>;
  using T = detail::Dp5;
  using std::abs;
  using std::max;
  using std::min;
  using std::pow;
  using std::sqrt;

  DriveResult<Scalar> result;
  result.t = t0;
  const Scalar direction = t_end >= t0 ? Scalar(1) : Scalar(-1);
  const Scalar span = abs(t_end - t0);
  if (span == Scalar(0)) return result;

  const auto scale = [&](const Vector& a, const Vector& b) {
    return (Scalar(ctl.abs_tol) + Scalar(ctl.rel_tol) * a.cwiseAbs().cwiseMax(b.cwiseAbs()).array())
        .matrix();
  };

  Vector y = y_start;
  Vector k1 = rhs(y);
  Scalar t = t0;

  Scalar h = Scalar(ctl.initial_step);
  if (h <= Scalar(0)) {
    const Vector sk = scale(y, y);
    const Scalar d0 = sqrt((y.array() / sk.array()).square().mean());
    const Scalar d1 = sqrt((k1.array() / sk.array()).square().mean());
    h = (d0 < Scalar(1e-5) || d1 < Scalar(1e-5)) ? Scalar(1e-6) : Scalar(0.01) * d0 / d1;
    h = min(h, Scalar(ctl.max_step));
  }
  h = min(h, span);

  DenseStep<Scalar, Dim> step;
  bool last_rejected = false;
  const Scalar floor_eps = Scalar(16) * std::numeric_limits<Scalar>::epsilon();

  while (true) {
    if (result.accepted + result.rejected >= ctl.max_steps) {
      result.status = DriveStatus::TooManySteps;
      result.t = t;
      return result;
    }
    const Scalar remaining = abs(t_end - t);
    bool final_step = false;
    if (h >= remaining) {
      h = remaining;
      final_step = true;
    }
    if (h <= floor_eps * max(abs(t), Scalar(1))) {
      result.status = DriveStatus::StepUnderflow;
      result.t = t;
      return result;
    }
    const Scalar hs = direction * h;

    const Vector k2 = rhs(Vector(y + hs * T::a21 * k1));
    const Vector k3 = rhs(Vector(y + hs * (T::a31 * k1 + T::a32 * k2)));
    const Vector k4 = rhs(Vector(y + hs * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3)));
    const Vector k5 =
        rhs(Vector(y + hs * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4)));
    const Vector k6 = rhs(
        Vector(y + hs * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5)));
    const Vector y_new =
        y + hs * (T::a71 * k1 + T::a73 * k3 + T::a74 * k4 + T::a75 * k5 + T::a76 * k6);
    const Vector k7 = rhs(y_new);
    const Vector err =
        hs * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
    const Vector sk = scale(y, y_new);
    Scalar err_norm = sqrt((err.array() / sk.array()).square().mean());
    if (!(err_norm == err_norm) || !y_new.allFinite()) err_norm = std::numeric_limits<Scalar>::max();

    if (err_norm <= Scalar(1) && admissible(y_new)) {
      step.t0 = t;
      step.t1 = final_step ? t_end : t + hs;
      step.y0 = y;
      step.y1 = y_new;
      const Vector dy = y_new - y;
      step.r1 = dy;
      step.r2 = hs * k1 - dy;
      step.r3 = dy - hs * k7 - step.r2;
      step.r4 = hs * (T::d1 * k1 + T::d3 * k3 + T::d4 * k4 + T::d5 * k5 + T::d6 * k6 +
                      T::d7 * k7);
      ++result.accepted;
      t = step.t1;
      y = y_new;
      k1 = k7;
      result.t = t;
      if (!observer(static_cast<const DenseStep<Scalar, Dim>&>(step))) {
        result.status = DriveStatus::Stopped;
        return result;
      }
      if (final_step) {
        result.status = DriveStatus::ReachedEnd;
        return result;
      }
      Scalar factor = err_norm > Scalar(0) ? Scalar(0.9) * pow(err_norm, Scalar(-0.2)) : Scalar(10);
      factor = min(Scalar(10), max(Scalar(0.2), factor));
      if (last_rejected) factor = min(factor, Scalar(1));
      h = min(h * factor, Scalar(ctl.max_step));
      last_rejected = false;
    } else {
      ++result.rejected;
      Scalar factor = Scalar(0.5);
      if (err_norm > Scalar(1) && err_norm < std::numeric_limits<Scalar>::max()) {
        factor = max(Scalar(0.1), Scalar(0.9) * pow(err_norm, Scalar(-0.2)));
      }
      h *= factor;
      last_rejected = true;
    }
  }
}

}  // namespace mht

#pragma once

#include "mht/model.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace mht {

/// Axis-aligned rectangle of the phase plane; Phi = [0,1]^2 by default.
struct Box {
  double u_min = 0.0;
  double u_max = 1.0;
  double v_min = 0.0;
  double v_max = 1.0;

  bool contains(const State& s) const {
    return s.x() >= u_min && s.x() <= u_max && s.y() >= v_min && s.y() <= v_max;
  }
  double width() const { return u_max - u_min; }
  double height() const { return v_max - v_min; }
  bool operator==(const Box&) const = default;
};

inline double distance_to_segment(const State& p, const State& a, const State& b) {
  const Vector2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

inline double distance_to_polyline(const State& p, const std::vector<State>& polyline) {
  if (polyline.empty()) return std::numeric_limits<double>::infinity();
  if (polyline.size() == 1) return (p - polyline.front()).norm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    best = std::min(best, distance_to_segment(p, polyline[i], polyline[i + 1]));
  }
  return best;
}

/// Winding number of the closed polyline (last point joined to the first)
/// around `point`.
inline int winding_number(const std::vector<State>& polyline, const State& point) {
  const std::size_t n = polyline.size();
  if (n < 3) return 0;
  const auto is_left = [](const State& a, const State& b, const State& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
  };
  int wn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const State& a = polyline[i];
    const State& b = polyline[(i + 1) % n];
    if (a.y() <= point.y()) {
      if (b.y() > point.y() && is_left(a, b, point) > 0) ++wn;
    } else if (b.y() <= point.y() && is_left(a, b, point) < 0) {
      --wn;
    }
  }
  return wn;
}

}  // namespace mht

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "roughflow/core/errors.hpp"

namespace roughflow {

inline constexpr int kMaxDyadicLevel = 20;

// Closed interval [s,t] inside a horizon [0,T].
struct TimeInterval {
  double s{0.0};
  double t{1.0};
  double horizon{1.0};

  TimeInterval() = default;
  TimeInterval(double s_, double t_, double horizon_ = -1.0)
      : s(s_), t(t_), horizon(horizon_ < 0 ? t_ : horizon_) {
    if (!(s <= t)) throw ConfigError("TimeInterval: s <= t required");
    if (!(t <= horizon + 1e-15)) throw ConfigError("TimeInterval: t <= T required");
    if (!(horizon > 0)) throw ConfigError("TimeInterval: horizon must be positive");
  }
  double length() const { return t - s; }
};

// Strictly increasing points s = s_0 < ... < s_n = t.
struct Partition {
  std::vector<double> points;

  Partition() = default;
  explicit Partition(std::vector<double> pts) : points(std::move(pts)) {
    for (size_t i = 0; i + 1 < points.size(); ++i)
      if (!(points[i] < points[i + 1]))
        throw ConfigError("Partition: points must be strictly increasing");
  }

  size_t cells() const { return points.empty() ? 0 : points.size() - 1; }
  double mesh() const {
    double m = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i)
      m = std::max(m, points[i + 1] - points[i]);
    return m;
  }
};

// 2^level equal cells of [s,t].
inline Partition dyadic_partition(const TimeInterval& iv, int level,
                                  int max_level = kMaxDyadicLevel) {
  if (level < 0 || level > max_level)
    throw ConfigError("dyadic_partition: level out of range");
  const int64_t n = int64_t{1} << level;
  std::vector<double> pts(static_cast<size_t>(n) + 1);
  for (int64_t i = 0; i <= n; ++i)
    pts[static_cast<size_t>(i)] =
        iv.s + (iv.t - iv.s) * (static_cast<double>(i) / static_cast<double>(n));
  pts.front() = iv.s;
  pts.back() = iv.t;
  return Partition(std::move(pts));
}

// Uniform grid 0 = t_0 < ... < t_N = T used by simulated drivers.
struct TimeGrid {
  double horizon{1.0};
  int steps{0};  // N; grid has N+1 points

  TimeGrid() = default;
  TimeGrid(double T, int n_steps) : horizon(T), steps(n_steps) {
    if (!(T > 0) || n_steps < 1) throw ConfigError("TimeGrid: T > 0, steps >= 1");
  }

  double dt() const { return horizon / steps; }
  double time(int i) const {
    return (i == steps) ? horizon : horizon * (static_cast<double>(i) / steps);
  }

  // Index of a grid-aligned time; rejects off-grid queries.
  int index_of(double u, double tol_rel = 1e-9) const {
    double x = u / horizon * steps;
    int i = static_cast<int>(std::llround(x));
    if (i < 0 || i > steps || std::abs(x - i) > tol_rel * steps)
      throw ConfigError("TimeGrid: time is not on the stored grid");
    return i;
  }
  bool aligned(double u, double tol_rel = 1e-9) const {
    double x = u / horizon * steps;
    int i = static_cast<int>(std::llround(x));
    return i >= 0 && i <= steps && std::abs(x - i) <= tol_rel * steps;
  }
  double snap(double u) const {
    double x = u / horizon * steps;
    int i = std::clamp(static_cast<int>(std::llround(x)), 0, steps);
    return time(i);
  }
};

// Adjacent dyadic cells (s,t) of [0,T] at every level <= max_level; the
// default evaluation set for time-indexed norms and metrics.
inline std::vector<std::pair<double, double>> dyadic_time_pairs(double T, int max_level) {
  std::vector<std::pair<double, double>> out;
  for (int k = 0; k <= max_level; ++k) {
    const int64_t n = int64_t{1} << k;
    for (int64_t i = 0; i < n; ++i) {
      double s = T * (static_cast<double>(i) / static_cast<double>(n));
      double t = T * (static_cast<double>(i + 1) / static_cast<double>(n));
      out.emplace_back(s, t);
    }
  }
  return out;
}

}  // namespace roughflow

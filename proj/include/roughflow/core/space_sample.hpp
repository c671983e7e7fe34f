#pragma once

#include <utility>
#include <vector>

#include "roughflow/core/errors.hpp"
#include "roughflow/core/tensor.hpp"

namespace roughflow {

// Axis-aligned box domain in R^d.
struct Box {
  Vec lo;
  Vec hi;

  Box() = default;
  Box(Vec lo_, Vec hi_) : lo(lo_), hi(hi_) {
    if (lo.n != hi.n) throw ConfigError("Box: dimension mismatch");
    for (int i = 0; i < lo.n; ++i)
      if (!(lo[i] < hi[i])) throw ConfigError("Box: lo < hi required per axis");
  }
  static Box unit(int d) {
    Vec lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
      lo[i] = -1.0;
      hi[i] = 1.0;
    }
    return Box(lo, hi);
  }
  int dim() const { return lo.n; }
  double diameter() const {
    Vec e = hi;
    e -= lo;
    return e.norm2();
  }
  bool contains(const Vec& x, double slack = 0.0) const {
    for (int i = 0; i < x.n; ++i)
      if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
    return true;
  }
  Vec clamp(const Vec& x) const;
};

// Finite proxy for sups over the domain: quasi-random points plus pairs
// (x,y) with 0 < |x-y| <= 1 feeding the Hoelder quotients. Sample norms are
// lower bounds of the true sup norms, monotone under enlargement.
struct SpaceSample {
  std::vector<Vec> points;
  std::vector<std::pair<Vec, Vec>> pairs;

  SpaceSample() = default;
  SpaceSample(std::vector<Vec> pts, std::vector<std::pair<Vec, Vec>> prs);

  // Halton-sequence points in the box; pair partners at distances in (0,1].
  static SpaceSample halton(const Box& box, int n_points = 256, int n_pairs = 512);
  // dense regular sample of an interval (d = 1) with adjacent-point pairs
  static SpaceSample regular_1d(double a, double b, int n_points);

  SpaceSample merged(const SpaceSample& other) const;
};

}  // namespace roughflow

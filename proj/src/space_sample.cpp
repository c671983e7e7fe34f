#include "roughflow/core/space_sample.hpp"

#include <algorithm>
#include <cmath>

namespace roughflow {

Vec Box::clamp(const Vec& x) const {
  Vec y = x;
  for (int i = 0; i < y.n; ++i) y[i] = std::clamp(y[i], lo[i], hi[i]);
  return y;
}

SpaceSample::SpaceSample(std::vector<Vec> pts, std::vector<std::pair<Vec, Vec>> prs)
    : points(std::move(pts)), pairs(std::move(prs)) {
  for (const auto& [x, y] : pairs) {
    double r = dist2(x, y);
    if (!(r > 0.0 && r <= 1.0 + 1e-12))
      throw ConfigError("SpaceSample: pair distances must lie in (0,1]");
  }
}

namespace {

double radical_inverse(int index, int base) {
  double f = 1.0, r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

constexpr int kBases[3] = {2, 3, 5};

}  // namespace

SpaceSample SpaceSample::halton(const Box& box, int n_points, int n_pairs) {
  if (n_points < 1) throw ConfigError("SpaceSample: need at least one point");
  const int d = box.dim();
  std::vector<Vec> pts;
  pts.reserve(static_cast<size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    Vec x(d);
    for (int j = 0; j < d; ++j) {
      double u = radical_inverse(i + 1, kBases[j]);
      x[j] = box.lo[j] + u * (box.hi[j] - box.lo[j]);
    }
    pts.push_back(x);
  }

  // Pairs: base point from the sequence, partner displaced by a quasi-random
  // direction at quasi-random radius in (0, r_max], clamped into the box.
  std::vector<std::pair<Vec, Vec>> prs;
  prs.reserve(static_cast<size_t>(n_pairs));
  const double r_max = std::min(1.0, 0.5 * box.diameter());
  int i = 1;
  while (static_cast<int>(prs.size()) < n_pairs) {
    Vec x(d), dir(d);
    for (int j = 0; j < d; ++j) {
      x[j] = box.lo[j] + radical_inverse(i, kBases[j]) * (box.hi[j] - box.lo[j]);
      dir[j] = 2.0 * radical_inverse(i + 7, kBases[(j + 1) % 3]) - 1.0;
    }
    double nrm = dir.norm2();
    if (nrm < 1e-12) {
      ++i;
      continue;
    }
    double radius = r_max * (0.05 + 0.95 * radical_inverse(i, 7));
    Vec y = x;
    for (int j = 0; j < d; ++j) y[j] += radius * dir[j] / nrm;
    y = box.clamp(y);
    double r = dist2(x, y);
    if (r > 1e-10 && r <= 1.0) prs.emplace_back(x, y);
    ++i;
  }
  return SpaceSample(std::move(pts), std::move(prs));
}

SpaceSample SpaceSample::regular_1d(double a, double b, int n_points) {
  if (n_points < 2) throw ConfigError("SpaceSample: regular_1d needs >= 2 points");
  std::vector<Vec> pts;
  std::vector<std::pair<Vec, Vec>> prs;
  for (int i = 0; i < n_points; ++i) {
    Vec x(1);
    x[0] = a + (b - a) * i / (n_points - 1);
    pts.push_back(x);
  }
  for (int i = 0; i + 1 < n_points; ++i) prs.emplace_back(pts[i], pts[i + 1]);
  // longer-range pairs, capped at distance 1
  for (int i = 0; i < n_points; ++i)
    for (int stride : {4, 16}) {
      if (i + stride >= n_points) continue;
      if (dist2(pts[i], pts[i + stride]) <= 1.0) prs.emplace_back(pts[i], pts[i + stride]);
    }
  return SpaceSample(std::move(pts), std::move(prs));
}

SpaceSample SpaceSample::merged(const SpaceSample& other) const {
  SpaceSample out = *this;
  out.points.insert(out.points.end(), other.points.begin(), other.points.end());
  out.pairs.insert(out.pairs.end(), other.pairs.begin(), other.pairs.end());
  return out;
}

}  // namespace roughflow

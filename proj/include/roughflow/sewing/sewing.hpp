#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "roughflow/core/time.hpp"
#include "roughflow/stochastic/rng.hpp"

namespace roughflow {

// Almost-additive 2-index map z(s,t) with values in R^m and declared
// exponent a > 1: |z_tu + z_us - z_ts| <= c1 |t-s|^a on triples.
struct TwoIndexMap {
  std::function<std::vector<double>(double, double)> eval;
  int value_dim{1};
  double a_exponent{2.0};
  std::optional<double> c1;
};

// Spot-check of the declared (c1, a) over random triples; returns the
// largest ratio defect / (c1 |t-s|^a) observed (<= 1 means consistent).
double validate_two_index_map(const TwoIndexMap& z, double s, double t,
                              int n_triples = 64, uint64_t seed = 7);

// Output of the sewing construction: Z_ts = lim_k sum of z over dyadic
// partitions. Values at dyadic points are kept as cumulative sums of the
// finest level, so Z is additive on that grid by telescoping.
struct SewingResult {
  double s{0.0}, t{1.0};
  int dim{1};
  int level_used{0};
  bool converged{false};
  std::vector<double> level_diffs;  // |S_{k+1} - S_k|, k = 0..
  double fitted_rate{0.0};          // observed decay exponent, about a - 1
  std::vector<double> cum;          // (2^K + 1) x dim cumulative finest sums

  // Z over a dyadic-aligned subinterval [u, v] of [s, t]
  std::vector<double> value(double u, double v) const;
  std::vector<double> value() const { return value(s, t); }
  double scalar() const { return value()[0]; }
};

SewingResult sew(const TwoIndexMap& z, double s, double t, int K_max, double tol);

}  // namespace roughflow

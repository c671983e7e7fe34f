#include "roughflow/sewing/sewing.hpp"

#include <cmath>

namespace roughflow {

double validate_two_index_map(const TwoIndexMap& z, double s, double t, int n_triples,
                              uint64_t seed) {
  if (!z.c1.has_value())
    throw ConfigError("validate_two_index_map: no declared constant c1");
  NormalSampler rng(seed);
  double worst = 0.0;
  for (int i = 0; i < n_triples; ++i) {
    double u1 = rng.uniform01(), u2 = rng.uniform01(), u3 = rng.uniform01();
    double a = s + (t - s) * std::min({u1, u2, u3});
    double m = s + (t - s) * std::max(std::min(u1, u2), std::min(std::max(u1, u2), u3));
    double b = s + (t - s) * std::max({u1, u2, u3});
    if (!(a < m && m < b)) continue;
    auto full = z.eval(a, b), left = z.eval(a, m), right = z.eval(m, b);
    double defect = 0.0;
    for (int d = 0; d < z.value_dim; ++d)
      defect = std::max(defect,
                        std::abs(left[static_cast<size_t>(d)] +
                                 right[static_cast<size_t>(d)] -
                                 full[static_cast<size_t>(d)]));
    double bound = *z.c1 * std::pow(b - a, z.a_exponent);
    if (bound > 0.0) worst = std::max(worst, defect / bound);
  }
  return worst;
}

std::vector<double> SewingResult::value(double u, double v) const {
  const int64_t n = int64_t{1} << level_used;
  auto index_of = [&](double x) {
    double rel = (x - s) / (t - s) * static_cast<double>(n);
    int64_t i = std::llround(rel);
    if (i < 0 || i > n || std::abs(rel - static_cast<double>(i)) > 1e-9 * n)
      throw ConfigError("SewingResult: time not on the sewing grid");
    return i;
  };
  int64_t iu = index_of(u), iv = index_of(v);
  std::vector<double> out(static_cast<size_t>(dim));
  for (int d = 0; d < dim; ++d)
    out[static_cast<size_t>(d)] =
        cum[static_cast<size_t>(iv) * dim + d] - cum[static_cast<size_t>(iu) * dim + d];
  return out;
}

SewingResult sew(const TwoIndexMap& z, double s, double t, int K_max, double tol) {
  if (!(z.a_exponent > 1.0)) throw ConfigError("sew: declared exponent must exceed 1");
  if (!(s < t)) throw ConfigError("sew: s < t required");
  if (K_max < 0 || K_max > kMaxDyadicLevel) throw ConfigError("sew: K_max out of range");

  SewingResult res;
  res.s = s;
  res.t = t;
  res.dim = z.value_dim;

  const size_t m = static_cast<size_t>(z.value_dim);
  auto level_sum = [&](int k, std::vector<double>* cum_out) {
    const int64_t n = int64_t{1} << k;
    std::vector<double> total(m, 0.0);
    if (cum_out) cum_out->assign((static_cast<size_t>(n) + 1) * m, 0.0);
    for (int64_t i = 0; i < n; ++i) {
      double a = s + (t - s) * (static_cast<double>(i) / static_cast<double>(n));
      double b = s + (t - s) * (static_cast<double>(i + 1) / static_cast<double>(n));
      auto v = z.eval(a, b);
      for (size_t d = 0; d < m; ++d) total[d] += v[d];
      if (cum_out)
        for (size_t d = 0; d < m; ++d)
          (*cum_out)[(static_cast<size_t>(i) + 1) * m + d] =
              (*cum_out)[static_cast<size_t>(i) * m + d] + v[d];
    }
    return total;
  };

  std::vector<double> prev = level_sum(0, nullptr);
  int level = 0;
  for (int k = 1; k <= K_max; ++k) {
    std::vector<double> cur = level_sum(k, nullptr);
    double diff = 0.0;
    for (size_t d = 0; d < m; ++d) diff = std::max(diff, std::abs(cur[d] - prev[d]));
    res.level_diffs.push_back(diff);
    prev = std::move(cur);
    level = k;
    if (diff <= tol) {
      res.converged = true;
      break;
    }
  }
  res.level_used = level;
  level_sum(level, &res.cum);

  // observed rate of the partial-sum differences (about a - 1)
  std::vector<std::pair<double, double>> pts;
  for (size_t k = 0; k < res.level_diffs.size(); ++k)
    if (res.level_diffs[k] > 0.0)
      pts.emplace_back(static_cast<double>(k), std::log2(res.level_diffs[k]));
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    res.fitted_rate = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return res;
}

}  // namespace roughflow

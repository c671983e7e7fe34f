#include "roughflow/driver/metrics.hpp"

#include <cmath>

#include "roughflow/core/parallel.hpp"

namespace roughflow {

TimePairs default_time_pairs(double T, int max_level) {
  return dyadic_time_pairs(T, max_level);
}

DriverNormReport driver_norm(const RoughDriver& drv, const TimePairs& pairs,
                             const SpaceSample& sample) {
  if (pairs.empty()) throw ConfigError("driver_norm: empty time-pair list");
  const DriverParams& p = drv.params();
  const int n = static_cast<int>(pairs.size());
  std::vector<double> v_rates(pairs.size()), w_rates(pairs.size());
  parallel_for(n, [&](int i) {
    auto [s, t] = pairs[static_cast<size_t>(i)];
    if (!(s < t)) throw ConfigError("driver_norm: need s < t");
    if (!drv.queryable(s, t)) throw ConfigError("driver_norm: pair not queryable");
    double dt1 = std::pow(t - s, 1.0 / p.p);
    double dt2 = std::pow(t - s, 2.0 / p.p);
    v_rates[static_cast<size_t>(i)] =
        holder_field_norm(*drv.v_field(s, t), sample, 2, p.rho) / dt1;
    w_rates[static_cast<size_t>(i)] =
        holder_field_norm(*drv.w_field(s, t), sample, 1, p.rho) / dt2;
  });
  DriverNormReport rep;
  rep.pairs_used = pairs;
  for (double v : v_rates) rep.v_part = std::max(rep.v_part, v);
  for (double w : w_rates) rep.w_part = std::max(rep.w_part, w);
  return rep;
}

DriverDistParts driver_dist_parts(const RoughDriver& a, const RoughDriver& b,
                                  const TimePairs& pairs, const SpaceSample& sample) {
  if (pairs.empty()) throw ConfigError("driver_dist: empty time-pair list");
  if (!(a.params() == b.params()))
    throw ConfigError("driver_dist: drivers must share (p, rho)");
  const DriverParams& p = a.params();
  const int n = static_cast<int>(pairs.size());
  std::vector<double> v_rates(pairs.size()), w_rates(pairs.size());
  parallel_for(n, [&](int i) {
    auto [s, t] = pairs[static_cast<size_t>(i)];
    if (!a.queryable(s, t) || !b.queryable(s, t))
      throw ConfigError("driver_dist: pair not queryable by both drivers");
    double dt1 = std::pow(t - s, 1.0 / p.p);
    double dt2 = std::pow(t - s, 2.0 / p.p);
    v_rates[static_cast<size_t>(i)] =
        holder_field_norm_diff(*a.v_field(s, t), *b.v_field(s, t), sample, 2, p.rho) / dt1;
    w_rates[static_cast<size_t>(i)] =
        holder_field_norm_diff(*a.w_field(s, t), *b.w_field(s, t), sample, 1, p.rho) / dt2;
  });
  DriverDistParts parts;
  for (double v : v_rates) parts.v_rate = std::max(parts.v_rate, v);
  for (double w : w_rates) parts.w_rate = std::max(parts.w_rate, w);
  return parts;
}

double driver_dist(const RoughDriver& a, const RoughDriver& b, const TimePairs& pairs,
                   const SpaceSample& sample, bool homogeneous) {
  DriverDistParts parts = driver_dist_parts(a, b, pairs, sample);
  return homogeneous ? parts.homogeneous() : parts.inhomogeneous();
}

}  // namespace roughflow

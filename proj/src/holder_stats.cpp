#include "roughflow/stochastic/holder_stats.hpp"

#include <algorithm>
#include <cmath>

#include "roughflow/core/parallel.hpp"

namespace roughflow {

namespace {
double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  size_t lo = static_cast<size_t>(pos);
  size_t hi = std::min(lo + 1, v.size() - 1);
  double w = pos - static_cast<double>(lo);
  return (1.0 - w) * v[lo] + w * v[hi];
}
}  // namespace

double HoelderStats::quantile_v(double q) const { return quantile(sup_v, q); }
double HoelderStats::quantile_w(double q) const { return quantile(sup_w, q); }

DiagnosticsResult kolmogorov_diagnostics(const DriverFamily& family, int replicates,
                                         double alpha, double beta,
                                         const TimePairs& pairs,
                                         const SpaceSample& sample, RngStreams rng) {
  if (replicates < 1) throw ConfigError("kolmogorov_diagnostics: replicates >= 1");
  if (!(alpha > 0.0) || !(beta > 0.0 && beta <= 1.0))
    throw ConfigError("kolmogorov_diagnostics: need alpha > 0 and beta in (0,1]");

  DiagnosticsResult out;
  out.stats.alpha = alpha;
  out.stats.beta = beta;
  out.stats.sup_v.assign(static_cast<size_t>(replicates), 0.0);
  out.stats.sup_w.assign(static_cast<size_t>(replicates), 0.0);

  parallel_for(replicates, [&](int r) {
    DriverPtr drv = family(rng.derive(static_cast<uint64_t>(r)));
    double sv = 0.0, sw = 0.0;
    for (const auto& [s, t] : pairs) {
      double dv = holder_field_norm(*drv->v_field(s, t), sample, 0, beta) /
                  std::pow(t - s, alpha);
      double dw = holder_field_norm(*drv->w_field(s, t), sample, 0, beta) /
                  std::pow(t - s, 2.0 * alpha);
      sv = std::max(sv, dv);
      sw = std::max(sw, dw);
    }
    out.stats.sup_v[static_cast<size_t>(r)] = sv;
    out.stats.sup_w[static_cast<size_t>(r)] = sw;
  });

  out.fit_v = TailFit::fit(out.stats.sup_v);
  std::vector<double> sqrt_w = out.stats.sup_w;
  for (double& v : sqrt_w) v = std::sqrt(v);
  out.fit_w_sqrt = TailFit::fit(std::move(sqrt_w));
  return out;
}

}  // namespace roughflow

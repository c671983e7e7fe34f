#pragma once

#include "roughflow/driver/metrics.hpp"
#include "roughflow/stochastic/rng.hpp"
#include "roughflow/stochastic/tail.hpp"

namespace roughflow {

// Empirical per-replicate sup statistics of a random driver family:
//   sup_(s,t) ||V_ts||_{C^beta, sample} / |t-s|^alpha
//   sup_(s,t) ||W_ts||_{C^beta, sample} / |t-s|^{2 alpha}
// These are finite-sample analogues of the Hoelder-in-time regularity the
// lifted fields enjoy; tails of the replicate sups are expected to be
// Gaussian for the sup of V and for the square root of the sup of W.
struct HoelderStats {
  double alpha{0.0};
  double beta{0.0};
  std::vector<double> sup_v;  // one entry per replicate
  std::vector<double> sup_w;

  double quantile_v(double q) const;
  double quantile_w(double q) const;
};

struct DiagnosticsResult {
  HoelderStats stats;
  TailFit fit_v;
  TailFit fit_w_sqrt;

  bool gaussian_compatible() const {
    return fit_v.verdict == TailVerdict::gaussian &&
           fit_w_sqrt.verdict == TailVerdict::gaussian;
  }
};

using DriverFamily = std::function<DriverPtr(uint64_t seed)>;

// replicates >= 100 required for a tail verdict; fewer replicates still
// produce the sup statistics but the fits report `insufficient`.
DiagnosticsResult kolmogorov_diagnostics(const DriverFamily& family, int replicates,
                                         double alpha, double beta,
                                         const TimePairs& pairs,
                                         const SpaceSample& sample, RngStreams rng);

}  // namespace roughflow

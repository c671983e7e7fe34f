#pragma once

#include <utility>
#include <vector>

#include "roughflow/core/norms.hpp"
#include "roughflow/driver/rough_driver.hpp"

namespace roughflow {

using TimePairs = std::vector<std::pair<double, double>>;

// Rate components of the driver (pseudo-)norm over a finite set of (s,t):
//   v_part = sup ||V_ts||_{C^{2+rho}} / |t-s|^{1/p}
//   w_part = sup ||W_ts||_{C^{1+rho}} / |t-s|^{2/p}
// The additive constant ||V_0|| is omitted: drivers enter only via increments.
struct DriverNormReport {
  double v_part{0.0};
  double w_part{0.0};
  TimePairs pairs_used;

  double norm() const { return std::max(v_part, w_part); }
};

// Default evaluation set: all dyadic cells of [0,T] at levels <= max_level.
TimePairs default_time_pairs(double T, int max_level = 6);

DriverNormReport driver_norm(const RoughDriver& drv, const TimePairs& pairs,
                             const SpaceSample& sample);

// Distance between drivers with identical parameters over the same pairs.
// homogeneous = false: max of the V-difference and W-difference rates.
// homogeneous = true:  max of the V-difference rate and the square root of
//                       the W-difference rate; 1-homogeneous under dilation.
double driver_dist(const RoughDriver& a, const RoughDriver& b, const TimePairs& pairs,
                   const SpaceSample& sample, bool homogeneous);

// Both difference rates at once (used by experiment tables).
struct DriverDistParts {
  double v_rate{0.0};
  double w_rate{0.0};
  double inhomogeneous() const { return std::max(v_rate, w_rate); }
  double homogeneous() const { return std::max(v_rate, std::sqrt(w_rate)); }
};
DriverDistParts driver_dist_parts(const RoughDriver& a, const RoughDriver& b,
                                  const TimePairs& pairs, const SpaceSample& sample);

}  // namespace roughflow

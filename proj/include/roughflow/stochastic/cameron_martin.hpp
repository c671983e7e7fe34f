#pragma once

#include "roughflow/driver/metrics.hpp"
#include "roughflow/lift/brownian_field.hpp"

namespace roughflow {

// Path h in mode-coefficient space with piecewise-constant derivative hdot
// on a grid; h(0) = 0. The inner product weights derivatives by the mode
// variances, <u, v>_H1 = sum_k u^k v^k / lambda_k, so the energy
// <h, h> = int |hdot|^2_H1 dt is the Schilder exponent of the lifted field.
struct CameronMartinPath {
  std::vector<double> knots;   // 0 = t_0 < .. < t_n = T
  std::vector<double> hdot;    // (n cells) x ell
  std::vector<double> lambda;  // mode weights, > 0
  double sigma_gamma{0.0};     // embedding constant ||.||_E <= sigma ||.||_H1

  CameronMartinPath() = default;
  CameronMartinPath(std::vector<double> knots_, std::vector<double> hdot_,
                    std::vector<double> lambda_, double sigma);

  size_t ell() const { return lambda.size(); }
  double horizon() const { return knots.back(); }
  std::vector<double> value_at(double u) const;  // h(u), piecewise linear
};

double cm_inner(const CameronMartinPath& h1, const CameronMartinPath& h2);

// Deterministic embedding constant sqrt(sum_k lambda_k ||e_k||^2) in the
// C^0 sample norm; Cauchy-Schwarz makes ||h||_E <= sigma ||h||_H1 exact.
double sigma_gamma_proxy(const ModeBasis& basis, const SpaceSample& sample);
// Monte Carlo estimate of sqrt(E ||X_1||^2_{C0,sample}) for the field
// X_1 = sum_k B^k_1 e_k (reported alongside the proxy in diagnostics).
double sigma_gamma_mc(const ModeBasis& basis, const SpaceSample& sample, int draws,
                      uint64_t seed);

// Checks the square-root-time increment bound and the 1-variation bound of
// Cameron-Martin paths on [s,t]; slack >= 0 when the bounds hold.
struct CmBoundsReport {
  double increment_norm{0.0};
  double increment_bound{0.0};
  double variation{0.0};
  double variation_bound{0.0};
  bool ok() const {
    return increment_norm <= increment_bound + 1e-12 &&
           variation <= variation_bound + 1e-12;
  }
  double slack() const {
    return std::min(increment_bound - increment_norm, variation_bound - variation);
  }
};
CmBoundsReport cm_bounds_check(const CameronMartinPath& h, const ModeBasis& basis,
                               const SpaceSample& sample, double s, double t);

// Schilder rate function. For an explicit Cameron-Martin path the value is
// (1/2) <h, h>. For a sampled coefficient path the square-integrability of
// the derivative is probed by a dyadic refinement sweep of the quadratic
// energy; paths whose energy keeps growing under refinement (Brownian
// samples double it per level) get the +infinity sentinel.
struct RateFunctionResult {
  double value{0.0};           // +infinity sentinel when !finite
  bool finite{true};
  double refinement_ratio{1.0};  // last-level energy growth factor
};
RateFunctionResult rate_function(const CameronMartinPath& h);
RateFunctionResult rate_function(const GridCoeffDriver& drv);

// Canonical lift S(h) of the piecewise-linear path with coefficients
// c = int hdot: a geometric rough driver whose rates obey
//   sup ||V_ts|| / |t-s|^{1/2} <= sigma_V sqrt(<h,h>)
//   sup ||W_ts|| / |t-s|      <= C_W <h,h>
// with constants computed from the basis (Cauchy-Schwarz, exact).
struct SmoothLiftReport {
  GridDriverPtr driver;
  double v_rate{0.0};
  double v_bound{0.0};
  double w_rate{0.0};
  double w_bound{0.0};
  double constant_C{0.0};  // C_W / sigma_gamma^2, the module's reported C
  bool ok() const { return v_rate <= v_bound + 1e-12 && w_rate <= w_bound + 1e-12; }
};
SmoothLiftReport smooth_lift(const CameronMartinPath& h, const ModeBasis& basis,
                             const SpaceSample& sample, DriverParams params,
                             const TimePairs& pairs);

// random piecewise-constant-derivative path (test/experiment helper)
CameronMartinPath random_cm_path(const ModeBasis& basis, const SpaceSample& sample,
                                 double T, int cells, double scale, uint64_t seed);

}  // namespace roughflow

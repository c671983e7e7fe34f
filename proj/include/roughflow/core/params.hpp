#pragma once

#include "roughflow/core/errors.hpp"

namespace roughflow {

// Regularity parameters of a rough driver: p in (2,3) and rho in (p-2, 1].
// Flow solves are well posed when rho > p/3; the solver refuses ill-posed
// parameters unless explicitly overridden.
struct DriverParams {
  double p{2.2};
  double rho{0.9};

  DriverParams() = default;
  DriverParams(double p_, double rho_) : p(p_), rho(rho_) { validate(); }

  void validate() const {
    if (!(p > 2.0 && p < 3.0)) throw ConfigError("DriverParams: p must lie in (2,3)");
    if (!(rho > p - 2.0 && rho <= 1.0))
      throw ConfigError("DriverParams: rho must lie in (p-2, 1]");
  }

  bool well_posed() const { return rho > p / 3.0; }

  // exponent of the one-step Euler expansion, and of the sewing scale
  double a_exponent() const { return 3.0 / p; }
  // geometric decay exponent of dyadic solver refinements
  double theoretical_rate() const { return 3.0 * rho / p - 1.0; }

  bool operator==(const DriverParams& o) const { return p == o.p && rho == o.rho; }
};

// Algebraic-identity tolerances: additivity and Chen defects have to vanish
// up to float accumulation, which differs between closed-form drivers and
// drivers interpolated off a 2^20-step grid.
inline constexpr double kTolAlgAnalytic = 1e-9;
inline constexpr double kTolAlgGrid = 1e-7;

}  // namespace roughflow

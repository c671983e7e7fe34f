#pragma once

#include <cstdint>

#include "roughflow/lift/coeff_driver.hpp"
#include "roughflow/stochastic/rng.hpp"

namespace roughflow {

// Finite-mode Brownian velocity field M_t = sum_k B^k_t e_k on a uniform
// simulation grid. Coefficient paths have independent Gaussian increments
// of variance lambda_k dt; the Levy-area matrix is accumulated per step by
// the midpoint (Stratonovich) rule, which keeps the area-Chen relation
// exact on the grid.
struct BrownianModeField {
  ModeBasis basis;
  TimeGrid grid;
  uint64_t seed{0};
  std::vector<double> coeff;     // (N+1) x ell, B^k_0 = 0
  std::vector<double> cum_area;  // (N+1) x ell x ell, area over [0, t_i]

  size_t modes() const { return basis.count(); }
  double b(int i, size_t k) const { return coeff[static_cast<size_t>(i) * modes() + k]; }
  // A^{jk}_ts for grid-aligned s <= t
  double area(double s, double t, size_t j, size_t k) const;
};

BrownianModeField simulate_brownian_field(const ModeBasis& basis, double T, int n_sim,
                                          uint64_t seed);

// Natural lift of the simulated field to a rough driver:
//   V_ts = sum_k B^k_ts e_k,  W_ts = sum_{j,k} A^{jk}_ts (e_j . e_k).
// Grid times only; Chen is exact on the grid.
GridDriverPtr mode_driver(const BrownianModeField& field, DriverParams params);

// Velocity-field snapshots on a grid (simulated or user supplied), the
// input for piecewise-linear interpolation lifts.
struct VelocityFieldSamples {
  ModeBasis basis;
  std::vector<double> times;
  std::vector<double> coeff;  // times.size() x ell

  static VelocityFieldSamples from_brownian(const BrownianModeField& field);
};

// Canonical lift of the piecewise-linear interpolation of the samples over
// the cells of D (a subset of the sample times). On each cell the path is
// affine, so the second level is a closed-form segment integral; the driver
// answers any (s,t) in [0,T].
GridDriverPtr piecewise_linear_lift(const VelocityFieldSamples& samples,
                                    const Partition& D, DriverParams params);

}  // namespace roughflow

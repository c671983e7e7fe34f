#pragma once

#include <functional>

#include "roughflow/lift/coeff_driver.hpp"

namespace roughflow {

// Finite-dimensional rough path (X, XX) over R^ell on a stored uniform grid,
// kept as cumulative values from 0; increments and second levels for grid
// pairs are reconstructed through Chen:
//   XX_ts = XX_t0 - XX_s0 - X_s0 (x) X_ts.
struct RoughPath {
  int ell{0};
  double p{2.2};
  TimeGrid grid;
  std::vector<double> x;   // (N+1) x ell
  std::vector<double> xx;  // (N+1) x ell x ell, XX_{t,0}

  std::vector<double> increment(double s, double t) const;
  // row-major ell x ell
  std::vector<double> second_level(double s, double t) const;

  // max over sampled grid pairs of |Sym(XX_ts) - (1/2) X_ts (x) X_ts|
  double sym_defect(int max_pairs = 256) const;
  // max over sampled grid triples of the tensor Chen defect
  double chen_defect(int max_triples = 256) const;

  // Lift of a smooth path: values on the grid, second level by per-step
  // polygon quadrature through the step midpoint (O(mesh^2) overall).
  static RoughPath from_path(const std::function<std::vector<double>(double)>& path,
                             int ell, double T, int n_steps, double p);
  static RoughPath from_data(int ell, double p, TimeGrid grid, std::vector<double> x,
                             std::vector<double> xx);
};

// V_ts = sum_i X^i_ts V_i, W_ts = sum_{j,k} Anti(XX_ts)^{jk} (V_j . V_k).
// The antisymmetric contraction keeps W a vector field; rejects paths whose
// symmetric part strays from (1/2) X (x) X by more than tol.
GridDriverPtr lift_rough_path(const std::vector<FieldPtr>& fields, const RoughPath& rp,
                              DriverParams params, double tol = kTolAlgGrid);

}  // namespace roughflow

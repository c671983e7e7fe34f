#pragma once

#include <memory>
#include <vector>

#include "roughflow/driver/rough_driver.hpp"
#include "roughflow/lift/mode_basis.hpp"

namespace roughflow {

// Rough driver carried by a coefficient path in mode space:
//   V_ts = sum_k (c^k_t - c^k_s) e_k,
//   W_ts = sum_{j,k} A^{jk}_ts (e_j . e_k),   (e_j . e_k) := (De_k)(e_j),
// with A the signed-area matrix of the coefficient path,
//   A^{jk}_ts = (1/2) int_s^t (c^j_us dc^k_u - c^k_us dc^j_u).
// Areas are accumulated once per knot from 0 and recombined through the
// Chen correction, so additivity and Chen hold to roundoff for every
// (s,u,t). Interpolating drivers treat the path as piecewise linear and
// answer any (s,t) in [0,T]; grid-locked drivers only answer knot times.
class GridCoeffDriver final : public RoughDriver {
 public:
  GridCoeffDriver(ModeBasis basis, std::vector<double> knots,
                  std::vector<double> coeffs_row_major, DriverParams params,
                  bool interpolating);

  // variant with externally accumulated areas (rough-path lifts, simulated
  // fields): cum_area[i] is the ell x ell matrix of the path area over [0, t_i]
  GridCoeffDriver(ModeBasis basis, std::vector<double> knots,
                  std::vector<double> coeffs_row_major,
                  std::vector<double> cum_area, DriverParams params,
                  bool interpolating);

  const DriverParams& params() const override { return params_; }
  double horizon() const override { return knots_.back(); }
  int dim() const override { return basis_.dim(); }
  FieldPtr v_field(double s, double t) const override;
  FieldPtr w_field(double s, double t) const override;
  bool queryable(double s, double t) const override;
  const TimeGrid* time_grid() const override {
    return uniform_ ? &uniform_grid_ : nullptr;
  }

  const ModeBasis& basis() const { return basis_; }
  const std::vector<double>& knots() const { return knots_; }
  size_t modes() const { return ell_; }
  bool interpolating() const { return interpolating_; }

  // coefficient path (linear interpolation between knots)
  std::vector<double> coeff_at(double u) const;
  std::vector<double> v_coefficients(double s, double t) const;
  // antisymmetric area matrix A_ts, row-major ell x ell
  std::vector<double> area_between(double s, double t) const;

  // structural transforms that stay in coefficient form
  std::shared_ptr<GridCoeffDriver> dilated(double eps) const;
  // index reflection on the stored grid (uniform knots; a must be a knot)
  std::shared_ptr<GridCoeffDriver> reversed_from(double a) const;

 private:
  void init();
  double coeff(size_t i, size_t k) const { return coeffs_[i * ell_ + k]; }
  double cum(size_t i, size_t j, size_t k) const {
    return cum_area_[(i * ell_ + j) * ell_ + k];
  }
  // index of last knot <= u, and interpolated coefficients
  size_t locate(double u) const;

  ModeBasis basis_;
  std::vector<double> knots_;
  std::vector<double> coeffs_;    // (n_knots) x ell
  std::vector<double> cum_area_;  // (n_knots) x ell x ell, area over [0, t_i]
  DriverParams params_;
  bool interpolating_;
  size_t ell_;
  bool uniform_{false};
  TimeGrid uniform_grid_;
};

using GridDriverPtr = std::shared_ptr<const GridCoeffDriver>;

// per-step area accumulation: cum[i+1] = cum[i] + (1/2) c_i /\ (c_{i+1} - c_i)
std::vector<double> accumulate_path_areas(const std::vector<double>& coeffs,
                                          size_t n_knots, size_t ell);

// Sum of two coefficient drivers on compatible grids. The summed second
// level needs the cross areas between the two coefficient paths, so the sum
// concatenates the bases and re-accumulates the full area matrix of the
// stacked path; Chen is exact by construction.
std::shared_ptr<GridCoeffDriver> sum_grid_drivers(const GridCoeffDriver& a,
                                                  const GridCoeffDriver& b);

}  // namespace roughflow

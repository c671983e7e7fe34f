#pragma once

#include "roughflow/flow/flow.hpp"
#include "roughflow/sewing/sewing.hpp"

namespace roughflow {

// Path sampled on a uniform grid; lookups are grid-aligned.
struct SampledPath {
  TimeGrid grid;
  std::vector<Vec> values;

  Vec at(double u) const { return values[static_cast<size_t>(grid.index_of(u))]; }
  int dim() const { return values.empty() ? 0 : values[0].n; }
};

// F(t, x): C^1 in time, C^3 in space; the Ito-formula test function.
struct TimeScalarMap {
  std::function<double(double, const Vec&)> value;
  std::function<Vec(double, const Vec&)> gradient;
  std::function<Mat(double, const Vec&)> hessian;
  std::function<double(double, const Vec&)> time_deriv;  // null = time-independent
};

// Reconstruction of F(t, x_t) - F(s, x_s) from the sewn 2-index map
//   z_uv = <grad F(u, x_u), x_v - x_u> + (1/2) (x_v - x_u)^T Hess F(u, x_u) (x_v - x_u)
// plus the time integral of dF/dr along the path; returns the defect
//   |F(t, x_t) - F(s, x_s) - int dF/dr - Z_ts|.
struct ItoReconstruction {
  double error{0.0};
  double sewn_value{0.0};
  double direct_increment{0.0};
  SewingResult sewing;
};
ItoReconstruction ito_reconstruct(const TimeScalarMap& F, const SampledPath& path,
                                  double s, double t, int K_max, double tol);

// Functions of finitely many flow points: f(x_1..x_k), with per-component
// gradients and diagonal Hessian blocks.
class MultiPointMap {
 public:
  virtual ~MultiPointMap() = default;
  virtual int dim() const = 0;
  virtual int points() const = 0;
  virtual double value(const std::vector<Vec>& xs) const = 0;
  virtual Vec grad_m(int m, const std::vector<Vec>& xs) const = 0;
  virtual Mat hess_mm(int m, const std::vector<Vec>& xs) const = 0;
};

// Sews z^f_uv = sum_m ((V^{m}_vu + VV^{m}_vu) f)(phi_u(y_1), .., phi_u(y_k))
// along the flow and compares with f(phi_t(y)) - f(phi_s(y)); the operators
// act on the m-th argument of f.
struct FlowFunctionalResult {
  double error{0.0};
  double sewn_value{0.0};
  double direct_increment{0.0};
  SewingResult sewing;
};
FlowFunctionalResult flow_functional_sew(const Flow& flow, const RoughDriver& drv,
                                         const std::vector<Vec>& ys,
                                         const MultiPointMap& f, double s, double t,
                                         int K_max, double tol);

}  // namespace roughflow

#pragma once

#include <optional>

#include "roughflow/core/space_sample.hpp"
#include "roughflow/driver/ops.hpp"
#include "roughflow/lift/coeff_driver.hpp"

namespace roughflow {

// One evaluation of the approximate flow mu_ts: the time-1 map of the
// autonomous ODE  dy/du = V_ts(y) + W_ts(y) (+ (t-s) drift), integrated by
// a classical 4th-order one-step method in n_sub stages. The integrator
// error O(((t-s)^{1/p})^5 / n_sub^4) sits far below the sewing scale
// |t-s|^{3/p}, so rate measurements see the maps as exact.
struct ODEConfig {
  int n_sub{8};
  FieldPtr drift;             // optional globally Lipschitz drift
  double guard_radius{1e3};   // blow-up guard: |y|_inf above this aborts
  bool allow_ill_posed{false};

  void validate() const {
    if (n_sub < 1) throw ConfigError("ODEConfig: n_sub >= 1 required");
  }
};

Vec mu_map(const RoughDriver& drv, double s, double t, const Vec& x,
           const ODEConfig& cfg);

// advance a batch of points by one mu over [s,t]; fields are fetched once
void mu_advance(const RoughDriver& drv, double s, double t, std::vector<Vec>& pts,
                const ODEConfig& cfg);

// sup over the sample of |f(mu_ts(x)) - f(x) - (V_ts f)(x) - (VV_ts f)(x)|;
// decays like |t-s|^{3/p} on rough drivers.
double euler_defect(const RoughDriver& drv, double s, double t, const ScalarField& f,
                    const SpaceSample& sample, const ODEConfig& cfg);

// Convergence record of the dyadic composition solver. delta_k is the sup
// difference between composites at levels k and k+1 on the probe points;
// the differences decay geometrically at rate about 3 rho / p - 1.
struct FlowSolveReport {
  std::vector<double> deltas;        // delta_k, k = 0 .. K-1
  double fitted_rate{0.0};           // least-squares decay exponent of delta_k
  double c1_fit{0.0};                // empirical constant of delta_k ~ c1 mesh^rate
  double theoretical_rate{0.0};      // 3 rho / p - 1
  bool converged{false};
  int level_used{0};                 // finest composition level computed
  double mu_distance_threshold{0.0}; // largest mesh with ||phi - mu|| <= mesh^{3/p}
};

// Solution flow: composite of mu over the finest dyadic partition computed.
// Evaluations at sub-intervals reuse the same fine partition points, so the
// flow property holds to integrator precision on aligned triples.
class Flow {
 public:
  Flow(DriverPtr drv, TimeInterval interval, ODEConfig cfg, int level,
       FlowSolveReport report);

  Vec eval(double s, double t, const Vec& x) const;
  std::vector<Vec> eval_points(double s, double t, std::vector<Vec> pts) const;

  const FlowSolveReport& report() const { return report_; }
  const TimeInterval& interval() const { return interval_; }
  const DriverPtr& driver() const { return drv_; }
  const ODEConfig& config() const { return cfg_; }
  int level() const { return level_; }

 private:
  DriverPtr drv_;
  TimeInterval interval_;
  ODEConfig cfg_;
  int level_;
  FlowSolveReport report_;
};

// Cauchy iteration over dyadic refinements until successive composites
// differ by at most tol_flow on the probe points, or K_max is reached
// (reported, not thrown). Requires rho > p/3 unless cfg.allow_ill_posed.
Flow solve_flow(DriverPtr drv, const TimeInterval& interval, const ODEConfig& cfg,
                double tol_flow, int K_max, const SpaceSample& probe);

// Flow of the time-reversed driver from the interval's right endpoint; its
// evaluations invert the forward flow.
Flow inverse_flow(DriverPtr drv, const TimeInterval& interval, const ODEConfig& cfg,
                  double tol_flow, int K_max, const SpaceSample& probe);

// sup over the sample of |psi(phi(x)) - x| for the pair returned by
// solve_flow / inverse_flow on the same interval.
double inversion_defect(const Flow& fwd, const Flow& rev, double s, double t,
                        const SpaceSample& sample);

// sup over the sample of |phi_tu(phi_us(x)) - phi_ts(x)|.
double flow_property_defect(const Flow& flow, double s, double u, double t,
                            const SpaceSample& sample);

// C^rho sample norm of x -> phi_ts(x): sup plus Hoelder quotient.
double flow_holder_norm(const Flow& flow, double s, double t, const SpaceSample& sample,
                        double rho);

// Itô-map continuity probe: distances between the base flow and flows of
// base + eps * perturbation, one row per eps. The perturbed driver is the
// coefficient-level sum, whose cross areas keep Chen exact.
struct ContinuityRow {
  double eps;
  double flow_distance;
};
std::vector<ContinuityRow> flow_continuity_probe(
    const GridCoeffDriver& base, const GridCoeffDriver& perturbation,
    const std::vector<double>& eps_list, const TimeInterval& interval,
    const ODEConfig& cfg, double tol_flow, int K_max, const SpaceSample& probe);

}  // namespace roughflow

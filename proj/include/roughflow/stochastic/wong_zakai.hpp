#pragma once

#include "roughflow/flow/flow.hpp"
#include "roughflow/stochastic/cameron_martin.hpp"

namespace roughflow {

// Convergence study of piecewise-linear lifts towards the natural lift:
// per mesh level, medians over replicates of the driver distances between
// M and M^D and of the sup distance between the rough flow of M and the
// ODE flow driven by M^D.
struct WongZakaiConfig {
  ModeBasis basis;
  DriverParams params;
  double T{1.0};
  int n_sim{2048};
  std::vector<int> levels;  // cells of D per level; must divide n_sim
  int replicates{20};
  uint64_t seed{1};
  ODEConfig ode;
  double tol_flow{1e-4};
  int k_max_flow{9};
  TimePairs pairs;          // time pairs for driver distances
  SpaceSample stat_sample;  // spatial sample for driver norms
  SpaceSample flow_sample;  // evaluation points for flow distances
  int ode_substeps{4};      // substeps per D-cell in the comparison ODE flow
};

struct WongZakaiRow {
  int level{0};  // cells of D
  double mesh{0.0};
  double median_dv{0.0};
  double median_dw{0.0};
  double median_homog{0.0};
  double median_flow_dist{0.0};
  int n_fail{0};
};

struct WongZakaiResult {
  std::vector<WongZakaiRow> rows;
  // log-log slope of median_homog (resp. flow dist) against mesh
  double slope_homog{0.0};
  double slope_flow{0.0};
};

WongZakaiResult wong_zakai_experiment(const WongZakaiConfig& cfg);

// Pathwise flow of the interpolated field: RK4 on the nonautonomous ODE
// dx/du = sum_k cdot^k(u) e_k(x) across the cells of the driver's grid.
Vec pl_ode_flow(const GridCoeffDriver& pl, const Vec& x0, int substeps_per_cell,
                double guard_radius = 1e3);

// Stratonovich-Heun integration of dx = M(x; o dt) on the simulation grid;
// cross-checks the rough flow against a classical SDE scheme.
Vec heun_flow(const BrownianModeField& field, const Vec& x0);

}  // namespace roughflow

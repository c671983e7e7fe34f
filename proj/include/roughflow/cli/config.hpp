#pragma once

#include <string>
#include <vector>

#include "roughflow/core/params.hpp"
#include "roughflow/core/space_sample.hpp"
#include "roughflow/core/time.hpp"
#include "roughflow/lift/mode_basis.hpp"

namespace roughflow {

// One JSON config file per run. Sections: params, domain, basis, solver,
// experiment, output. Unknown keys are rejected; every field has a
// documented default (see README). The resolved config reparses to an
// equal document.
struct ExperimentConfig {
  // params
  double p{2.2};
  double rho{0.9};
  double T{1.0};

  // domain
  int dimension{2};
  std::vector<double> box_lo{-1.0, -1.0};
  std::vector<double> box_hi{1.0, 1.0};
  int points{256};
  int pairs{512};
  double h_fd{1e-4};

  // basis
  std::string family{"trig"};  // trig | bump | constant
  int modes{2};
  std::vector<double> weights{1.0, 1.0};
  double eta{0.0};

  // solver
  int n_sub{8};
  double tol_flow{1e-6};
  int k_max{10};
  bool allow_ill_posed{false};
  double guard_factor{1e3};

  // experiment
  std::string kind;  // flow_solve | wong_zakai | diagnostics | schilder | ito_check
  std::vector<int> levels{8, 16, 32, 64, 128, 256};
  int replicates{20};
  uint64_t seed{1};
  int n_sim{2048};
  int time_pair_level{5};
  int stat_points{64};
  int stat_pairs{128};
  int flow_points{32};
  std::string driver{"mode"};  // zero | constant | linear | mode
  std::vector<double> constant_c{0.3, 0.2};
  double linear_lambda{0.5};
  double alpha{0.4};
  double beta{0.5};
  int ode_substeps{4};
  bool dump_paths{false};

  // output
  std::string out_dir{"out"};

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;  // resolved config, sorted keys

  void validate() const;
  DriverParams driver_params() const { return DriverParams(p, rho); }
  Box box() const;
  ModeBasis make_basis() const;
  SpaceSample domain_sample() const;  // points x pairs from the domain section
  SpaceSample stat_sample() const;    // smaller sample for experiment statistics
  SpaceSample flow_sample() const;    // probe points for flow solves
};

}  // namespace roughflow

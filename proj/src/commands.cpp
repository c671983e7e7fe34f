#include "roughflow/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "roughflow/io/csv.hpp"
#include "roughflow/sewing/ito.hpp"
#include "roughflow/stochastic/holder_stats.hpp"
#include "roughflow/stochastic/wong_zakai.hpp"

namespace roughflow {

namespace {

namespace fs = std::filesystem;

std::string prepare_outdir(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  std::ofstream resolved(fs::path(cfg.out_dir) / "resolved_config.json");
  resolved << cfg.to_json_text();
  return cfg.out_dir;
}

ODEConfig ode_config(const ExperimentConfig& cfg) {
  ODEConfig ode;
  ode.n_sub = cfg.n_sub;
  ode.guard_radius = cfg.guard_factor * cfg.box().diameter();
  ode.allow_ill_posed = cfg.allow_ill_posed;
  return ode;
}

DriverPtr build_driver(const ExperimentConfig& cfg, uint64_t seed) {
  DriverParams params = cfg.driver_params();
  if (cfg.driver == "zero")
    return std::make_shared<ZeroDriver>(cfg.dimension, cfg.T, params);
  if (cfg.driver == "constant") {
    Vec c(cfg.dimension);
    for (int i = 0; i < cfg.dimension; ++i)
      c[i] = i < static_cast<int>(cfg.constant_c.size())
                 ? cfg.constant_c[static_cast<size_t>(i)]
                 : 0.0;
    return std::make_shared<ConstantDriver>(c, cfg.T, params);
  }
  if (cfg.driver == "linear") {
    // d = 1 field x d/dx driven by the linear clock t -> lambda t
    Mat id(1);
    id(0, 0) = 1.0;
    std::vector<FieldPtr> fields{std::make_shared<LinearMapField>(id)};
    ModeBasis basis(std::move(fields), {1.0});
    std::vector<double> knots{0.0, cfg.T};
    std::vector<double> coeffs{0.0, cfg.linear_lambda * cfg.T};
    return std::make_shared<GridCoeffDriver>(std::move(basis), std::move(knots),
                                             std::move(coeffs), params,
                                             /*interpolating=*/true);
  }
  BrownianModeField field =
      simulate_brownian_field(cfg.make_basis(), cfg.T, cfg.n_sim, seed);
  return mode_driver(field, params);
}

}  // namespace

int cmd_flow_solve(const ExperimentConfig& cfg, std::ostream& log) {
  std::string dir = prepare_outdir(cfg);
  DriverPtr drv = build_driver(cfg, cfg.seed);
  SpaceSample probe = cfg.flow_sample();
  TimeInterval whole(0.0, cfg.T, cfg.T);

  Flow flow = solve_flow(drv, whole, ode_config(cfg), cfg.tol_flow, cfg.k_max, probe);
  const FlowSolveReport& rep = flow.report();

  {
    CsvWriter csv(dir + "/flow_report.csv", "roughflow.flow_report.v1",
                  {"level", "delta", "fitted_rate", "theoretical_rate", "converged"});
    for (size_t k = 0; k < rep.deltas.size(); ++k)
      csv.row({static_cast<double>(k), rep.deltas[k], rep.fitted_rate,
               rep.theoretical_rate, rep.converged ? 1.0 : 0.0});
  }
  {
    const int d = cfg.dimension;
    std::vector<std::string> header;
    for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
    for (int i = 0; i < d; ++i) header.push_back("phi" + std::to_string(i));
    CsvWriter csv(dir + "/flow_dump.csv", "roughflow.flow_dump.v1", header);
    std::vector<Vec> ends = flow.eval_points(0.0, cfg.T, probe.points);
    for (size_t i = 0; i < probe.points.size(); ++i) {
      std::vector<double> row;
      for (int j = 0; j < d; ++j) row.push_back(probe.points[i][j]);
      for (int j = 0; j < d; ++j) row.push_back(ends[i][j]);
      csv.row(row);
    }
  }
  log << "flow_solve: levels=" << rep.level_used << " converged=" << rep.converged
      << " fitted_rate=" << rep.fitted_rate << "\n";
  return rep.converged ? kExitOk : kExitNotConverged;
}

int cmd_wong_zakai(const ExperimentConfig& cfg, std::ostream& log) {
  std::string dir = prepare_outdir(cfg);

  WongZakaiConfig wz;
  wz.basis = cfg.make_basis();
  wz.params = cfg.driver_params();
  wz.T = cfg.T;
  wz.n_sim = cfg.n_sim;
  wz.levels = cfg.levels;
  wz.replicates = cfg.replicates;
  wz.seed = cfg.seed;
  wz.ode = ode_config(cfg);
  wz.tol_flow = cfg.tol_flow;
  wz.k_max_flow = cfg.k_max;
  wz.pairs = dyadic_time_pairs(cfg.T, cfg.time_pair_level);
  wz.stat_sample = cfg.stat_sample();
  wz.flow_sample = cfg.flow_sample();
  wz.ode_substeps = cfg.ode_substeps;

  if (cfg.dump_paths) {
    BrownianModeField field =
        simulate_brownian_field(wz.basis, cfg.T, cfg.n_sim, RngStreams(cfg.seed).derive(0));
    write_brownian_field_csv(field, dir + "/brownian_field_rep0.csv");
  }

  WongZakaiResult res = wong_zakai_experiment(wz);
  CsvWriter csv(dir + "/wong_zakai.csv", "roughflow.wong_zakai.v1",
                {"level", "mesh", "median_dV", "median_dW", "median_homog",
                 "median_flow_dist", "n_fail"});
  for (const auto& row : res.rows)
    csv.row({static_cast<double>(row.level), row.mesh, row.median_dv, row.median_dw,
             row.median_homog, row.median_flow_dist, static_cast<double>(row.n_fail)});
  CsvWriter summary(dir + "/wong_zakai_summary.csv", "roughflow.wong_zakai_summary.v1",
                    {"slope_homog", "slope_flow"});
  summary.row({res.slope_homog, res.slope_flow});

  log << "wong_zakai: levels=" << res.rows.size() << " slope_homog=" << res.slope_homog
      << " slope_flow=" << res.slope_flow << "\n";
  bool all_failed = !res.rows.empty() && res.rows.front().n_fail >= cfg.replicates;
  return all_failed ? kExitNotConverged : kExitOk;
}

int cmd_diagnostics(const ExperimentConfig& cfg, std::ostream& log) {
  std::string dir = prepare_outdir(cfg);
  ModeBasis basis = cfg.make_basis();
  DriverParams params = cfg.driver_params();
  DriverFamily family = [&](uint64_t seed) -> DriverPtr {
    return mode_driver(simulate_brownian_field(basis, cfg.T, cfg.n_sim, seed), params);
  };
  TimePairs pairs = dyadic_time_pairs(cfg.T, cfg.time_pair_level);
  SpaceSample sample = cfg.stat_sample();
  DiagnosticsResult res = kolmogorov_diagnostics(family, cfg.replicates, cfg.alpha,
                                                 cfg.beta, pairs, sample,
                                                 RngStreams(cfg.seed));

  CsvWriter csv(dir + "/diagnostics.csv", "roughflow.diagnostics.v1",
                {"replicate", "sup_stat_V", "sup_stat_W"});
  for (size_t r = 0; r < res.stats.sup_v.size(); ++r)
    csv.row({static_cast<double>(r), res.stats.sup_v[r], res.stats.sup_w[r]});
  CsvWriter summary(dir + "/diagnostics_summary.csv", "roughflow.diagnostics_summary.v1",
                    {"fit", "c", "r2", "verdict"});
  summary.row_mixed({"sup_V", CsvWriter::format(res.fit_v.c),
                     CsvWriter::format(res.fit_v.r2), to_string(res.fit_v.verdict)});
  summary.row_mixed({"sqrt_sup_W", CsvWriter::format(res.fit_w_sqrt.c),
                     CsvWriter::format(res.fit_w_sqrt.r2),
                     to_string(res.fit_w_sqrt.verdict)});

  log << "diagnostics: verdict_V=" << to_string(res.fit_v.verdict)
      << " verdict_sqrtW=" << to_string(res.fit_w_sqrt.verdict) << "\n";
  return res.gaussian_compatible() ? kExitOk : kExitNotConverged;
}

int cmd_schilder(const ExperimentConfig& cfg, std::ostream& log) {
  std::string dir = prepare_outdir(cfg);
  ModeBasis basis = cfg.make_basis();
  DriverParams params = cfg.driver_params();
  SpaceSample sample = cfg.stat_sample();
  TimePairs pairs = dyadic_time_pairs(cfg.T, std::min(cfg.time_pair_level, 4));
  RngStreams rng(cfg.seed);
  bool all_pass = true;

  CsvWriter csv(dir + "/schilder.csv", "roughflow.schilder.v1",
                {"check", "value", "reference", "pass"});
  auto emit = [&](const std::string& name, double value, double reference, bool pass) {
    csv.row_mixed({name, CsvWriter::format(value), CsvWriter::format(reference),
                   pass ? "1" : "0"});
    all_pass = all_pass && pass;
  };

  const double sigma = sigma_gamma_proxy(basis, sample);
  const double sigma_mc = sigma_gamma_mc(basis, sample, 1000, rng.derive(900));
  emit("sigma_gamma_proxy", sigma, sigma_mc, true);

  // closed-form rate function values
  {
    std::vector<double> knots{0.0, cfg.T};
    std::vector<double> hdot(basis.count(), 0.0);
    std::vector<double> lambda = basis.lambda;
    for (double& l : lambda)
      if (!(l > 0.0)) l = 1.0;
    CameronMartinPath zero(knots, hdot, lambda, sigma);
    emit("rate_zero", rate_function(zero).value, 0.0,
         std::abs(rate_function(zero).value) <= 1e-12);

    hdot[0] = 0.7;
    CameronMartinPath lin(knots, hdot, lambda, sigma);
    double expect = 0.5 * 0.7 * 0.7 * cfg.T / lambda[0];
    emit("rate_constant_hdot", rate_function(lin).value, expect,
         std::abs(rate_function(lin).value - expect) <= 1e-12);
  }

  // Brownian coefficient paths are not Cameron-Martin: sentinel expected
  {
    BrownianModeField field =
        simulate_brownian_field(basis, cfg.T, cfg.n_sim, rng.derive(7));
    auto drv = mode_driver(field, params);
    RateFunctionResult r = rate_function(*drv);
    emit("rate_brownian_sentinel", r.finite ? 0.0 : 1.0, 1.0, !r.finite);
  }

  // Cameron-Martin bounds on random paths: zero violations expected
  {
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
      CameronMartinPath h =
          random_cm_path(basis, sample, cfg.T, 16, 0.8, rng.derive(100 + i));
      CmBoundsReport rep = cm_bounds_check(h, basis, sample, 0.0, cfg.T);
      CmBoundsReport rep2 =
          cm_bounds_check(h, basis, sample, cfg.T / 4.0, cfg.T / 2.0);
      if (!rep.ok() || !rep2.ok()) ++violations;
    }
    emit("cm_bound_violations", violations, 0.0, violations == 0);
  }

  // smooth-lift rate bounds with the module constants
  {
    int violations = 0;
    double c_reported = 0.0;
    for (int i = 0; i < 20; ++i) {
      CameronMartinPath h =
          random_cm_path(basis, sample, cfg.T, 8, 0.8, rng.derive(300 + i));
      SmoothLiftReport rep = smooth_lift(h, basis, sample, params, pairs);
      c_reported = rep.constant_C;
      if (!rep.ok()) ++violations;
    }
    emit("smooth_lift_violations", violations, c_reported, violations == 0);
  }

  // exact 1-homogeneity of the homogeneous metric under dilation
  {
    auto x = mode_driver(simulate_brownian_field(basis, cfg.T, cfg.n_sim, rng.derive(11)),
                         params);
    auto y = mode_driver(simulate_brownian_field(basis, cfg.T, cfg.n_sim, rng.derive(12)),
                         params);
    double base = driver_dist(*x, *y, pairs, sample, /*homogeneous=*/true);
    bool ok = true;
    double worst = 0.0;
    for (double eps : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
      double dd = driver_dist(*dilate(x, eps), *dilate(y, eps), pairs, sample, true);
      double defect = std::abs(dd - eps * base);
      worst = std::max(worst, defect / (1.0 + dd));
      ok = ok && defect <= 1e-12 * (1.0 + dd);
    }
    emit("homogeneity_defect", worst, 1e-12, ok);
  }

  log << "schilder: " << (all_pass ? "all checks passed" : "FAILURES") << "\n";
  return all_pass ? kExitOk : kExitNotConverged;
}

int cmd_ito_check(const ExperimentConfig& cfg, std::ostream& log) {
  std::string dir = prepare_outdir(cfg);
  CsvWriter csv(dir + "/ito_check.csv", "roughflow.ito_check.v1",
                {"case", "replicate", "error"});

  // circle path with F = |x|^2: the sewn map vanishes identically
  double circle_err;
  {
    int n = 1 << 10;
    SampledPath path;
    path.grid = TimeGrid(1.0, n);
    for (int i = 0; i <= n; ++i) {
      double u = path.grid.time(i);
      path.values.push_back(Vec{std::cos(u), std::sin(u)});
    }
    TimeScalarMap F;
    F.value = [](double, const Vec& x) { return x[0] * x[0] + x[1] * x[1]; };
    F.gradient = [](double, const Vec& x) { return 2.0 * x; };
    F.hessian = [](double, const Vec& x) {
      Mat m(x.n);
      m(0, 0) = 2.0;
      m(1, 1) = 2.0;
      return m;
    };
    circle_err = ito_reconstruct(F, path, 0.0, 1.0, 10, 0.0).error;
    csv.row_mixed({"circle", "0", CsvWriter::format(circle_err)});
  }

  // F = sin on simulated Brownian paths, level-12 grid
  std::vector<double> errors;
  {
    TimeScalarMap F;
    F.value = [](double, const Vec& x) { return std::sin(x[0]); };
    F.gradient = [](double, const Vec& x) { return Vec{std::cos(x[0])}; };
    F.hessian = [](double, const Vec& x) {
      Mat m(1);
      m(0, 0) = -std::sin(x[0]);
      return m;
    };
    RngStreams rng(cfg.seed);
    const int n = 1 << 12;
    for (int r = 0; r < cfg.replicates; ++r) {
      NormalSampler normal(rng.derive(static_cast<uint64_t>(r)));
      SampledPath path;
      path.grid = TimeGrid(1.0, n);
      double b = 0.0;
      double sdt = std::sqrt(path.grid.dt());
      path.values.push_back(Vec{0.0});
      for (int i = 1; i <= n; ++i) {
        b += sdt * normal();
        path.values.push_back(Vec{b});
      }
      double err = ito_reconstruct(F, path, 0.0, 1.0, 12, 0.0).error;
      errors.push_back(err);
      csv.row_mixed({"sin_brownian", std::to_string(r), CsvWriter::format(err)});
    }
  }
  std::sort(errors.begin(), errors.end());
  double med = errors.empty() ? 0.0
                              : (errors.size() % 2
                                     ? errors[errors.size() / 2]
                                     : 0.5 * (errors[errors.size() / 2 - 1] +
                                              errors[errors.size() / 2]));
  log << "ito_check: circle_error=" << circle_err << " median_sin_error=" << med << "\n";
  bool pass = circle_err <= 1e-12 && med <= 1e-3;
  return pass ? kExitOk : kExitNotConverged;
}

int run_command(const ExperimentConfig& cfg, std::ostream& log) {
  try {
    if (cfg.kind == "flow_solve") return cmd_flow_solve(cfg, log);
    if (cfg.kind == "wong_zakai") return cmd_wong_zakai(cfg, log);
    if (cfg.kind == "diagnostics") return cmd_diagnostics(cfg, log);
    if (cfg.kind == "schilder") return cmd_schilder(cfg, log);
    if (cfg.kind == "ito_check") return cmd_ito_check(cfg, log);
    throw ConfigError("run_command: no experiment kind configured");
  } catch (const BlowUpError& e) {
    log << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace roughflow

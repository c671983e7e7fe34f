#include "roughflow/cli/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace roughflow {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& section) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + it.key() + "' in section " + section);
}

template <typename T>
void load(const json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  check_keys(j, {"params", "domain", "basis", "solver", "experiment", "output"}, "root");

  ExperimentConfig c;
  if (j.contains("params")) {
    const auto& s = j["params"];
    check_keys(s, {"p", "rho", "T"}, "params");
    load(s, "p", c.p);
    load(s, "rho", c.rho);
    load(s, "T", c.T);
  }
  if (j.contains("domain")) {
    const auto& s = j["domain"];
    check_keys(s, {"dimension", "box_lo", "box_hi", "points", "pairs", "h_fd"},
               "domain");
    load(s, "dimension", c.dimension);
    load(s, "box_lo", c.box_lo);
    load(s, "box_hi", c.box_hi);
    load(s, "points", c.points);
    load(s, "pairs", c.pairs);
    load(s, "h_fd", c.h_fd);
    if (!s.contains("box_lo")) c.box_lo.assign(static_cast<size_t>(c.dimension), -1.0);
    if (!s.contains("box_hi")) c.box_hi.assign(static_cast<size_t>(c.dimension), 1.0);
  }
  if (j.contains("basis")) {
    const auto& s = j["basis"];
    check_keys(s, {"family", "modes", "weights", "eta"}, "basis");
    load(s, "family", c.family);
    load(s, "modes", c.modes);
    load(s, "weights", c.weights);
    load(s, "eta", c.eta);
    if (!s.contains("weights")) c.weights.assign(static_cast<size_t>(c.modes), 1.0);
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    check_keys(s, {"n_sub", "tol_flow", "k_max", "allow_ill_posed", "guard_factor"},
               "solver");
    load(s, "n_sub", c.n_sub);
    load(s, "tol_flow", c.tol_flow);
    load(s, "k_max", c.k_max);
    load(s, "allow_ill_posed", c.allow_ill_posed);
    load(s, "guard_factor", c.guard_factor);
  }
  if (j.contains("experiment")) {
    const auto& s = j["experiment"];
    check_keys(s,
               {"kind", "levels", "replicates", "seed", "n_sim", "time_pair_level",
                "stat_points", "stat_pairs", "flow_points", "driver", "constant_c",
                "linear_lambda", "alpha", "beta", "ode_substeps", "dump_paths"},
               "experiment");
    load(s, "kind", c.kind);
    load(s, "levels", c.levels);
    load(s, "replicates", c.replicates);
    load(s, "seed", c.seed);
    load(s, "n_sim", c.n_sim);
    load(s, "time_pair_level", c.time_pair_level);
    load(s, "stat_points", c.stat_points);
    load(s, "stat_pairs", c.stat_pairs);
    load(s, "flow_points", c.flow_points);
    load(s, "driver", c.driver);
    load(s, "constant_c", c.constant_c);
    load(s, "linear_lambda", c.linear_lambda);
    load(s, "alpha", c.alpha);
    load(s, "beta", c.beta);
    load(s, "ode_substeps", c.ode_substeps);
    load(s, "dump_paths", c.dump_paths);
  }
  if (j.contains("output")) {
    const auto& s = j["output"];
    check_keys(s, {"directory"}, "output");
    load(s, "directory", c.out_dir);
  }
  c.validate();
  return c;
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["params"] = {{"p", p}, {"rho", rho}, {"T", T}};
  j["domain"] = {{"dimension", dimension}, {"box_lo", box_lo}, {"box_hi", box_hi},
                 {"points", points},       {"pairs", pairs},   {"h_fd", h_fd}};
  j["basis"] = {{"family", family}, {"modes", modes}, {"weights", weights}, {"eta", eta}};
  j["solver"] = {{"n_sub", n_sub},
                 {"tol_flow", tol_flow},
                 {"k_max", k_max},
                 {"allow_ill_posed", allow_ill_posed},
                 {"guard_factor", guard_factor}};
  j["experiment"] = {{"kind", kind},
                     {"levels", levels},
                     {"replicates", replicates},
                     {"seed", seed},
                     {"n_sim", n_sim},
                     {"time_pair_level", time_pair_level},
                     {"stat_points", stat_points},
                     {"stat_pairs", stat_pairs},
                     {"flow_points", flow_points},
                     {"driver", driver},
                     {"constant_c", constant_c},
                     {"linear_lambda", linear_lambda},
                     {"alpha", alpha},
                     {"beta", beta},
                     {"ode_substeps", ode_substeps},
                     {"dump_paths", dump_paths}};
  j["output"] = {{"directory", out_dir}};
  return j.dump(2) + "\n";
}

void ExperimentConfig::validate() const {
  DriverParams(p, rho);  // throws on bad (p, rho)
  if (!(T > 0.0)) throw ConfigError("config: T must be positive");
  if (dimension < 1 || dimension > kMaxDim)
    throw ConfigError("config: dimension must be 1..3");
  if (box_lo.size() != static_cast<size_t>(dimension) ||
      box_hi.size() != static_cast<size_t>(dimension))
    throw ConfigError("config: box extents must match the dimension");
  if (points < 1 || pairs < 1) throw ConfigError("config: sample sizes must be >= 1");
  if (!(h_fd > 0.0)) throw ConfigError("config: h_fd must be positive");
  if (family != "trig" && family != "bump" && family != "constant")
    throw ConfigError("config: unknown basis family " + family);
  if (modes < 1) throw ConfigError("config: modes >= 1");
  if (weights.size() != static_cast<size_t>(modes))
    throw ConfigError("config: weights must have one entry per mode");
  for (double w : weights)
    if (w < 0.0) throw ConfigError("config: weights must be nonnegative");
  if (n_sub < 1) throw ConfigError("config: n_sub >= 1");
  if (k_max < 1 || k_max > kMaxDyadicLevel) throw ConfigError("config: k_max out of range");
  if (!kind.empty() && kind != "flow_solve" && kind != "wong_zakai" &&
      kind != "diagnostics" && kind != "schilder" && kind != "ito_check")
    throw ConfigError("config: unknown experiment kind " + kind);
  if (replicates < 1) throw ConfigError("config: replicates >= 1");
  if (n_sim < 2) throw ConfigError("config: n_sim >= 2");
  if (driver != "zero" && driver != "constant" && driver != "linear" && driver != "mode")
    throw ConfigError("config: unknown driver " + driver);
}

Box ExperimentConfig::box() const {
  Vec lo(dimension), hi(dimension);
  for (int i = 0; i < dimension; ++i) {
    lo[i] = box_lo[static_cast<size_t>(i)];
    hi[i] = box_hi[static_cast<size_t>(i)];
  }
  return Box(lo, hi);
}

ModeBasis ExperimentConfig::make_basis() const {
  if (family == "trig") return make_trig_basis(box(), modes, weights);
  if (family == "bump") return make_bump_basis(box(), modes, weights, eta);
  std::vector<Vec> dirs;
  for (int k = 0; k < modes; ++k) {
    Vec v(dimension);
    v[k % dimension] = 1.0;
    dirs.push_back(v);
  }
  return make_constant_basis(std::move(dirs), weights);
}

SpaceSample ExperimentConfig::domain_sample() const {
  return SpaceSample::halton(box(), points, pairs);
}

SpaceSample ExperimentConfig::stat_sample() const {
  return SpaceSample::halton(box(), stat_points, stat_pairs);
}

SpaceSample ExperimentConfig::flow_sample() const {
  return SpaceSample::halton(box(), flow_points, std::max(flow_points, 8));
}

}  // namespace roughflow

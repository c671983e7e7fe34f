#include "roughflow/stochastic/wong_zakai.hpp"

#include <algorithm>
#include <cmath>

#include "roughflow/core/parallel.hpp"

namespace roughflow {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  if (pts.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [a, b] : pts) {
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Vec pl_ode_flow(const GridCoeffDriver& pl, const Vec& x0, int substeps_per_cell,
                double guard_radius) {
  const auto& knots = pl.knots();
  const auto& fields = *pl.basis().fields;
  const size_t e = pl.modes();
  Vec y = x0;
  auto rhs = [&](double u, const Vec& x) {
    // time derivative of the interpolated coefficients on the current cell
    auto it = std::upper_bound(knots.begin(), knots.end(), u);
    size_t i = std::min(static_cast<size_t>(std::max<long>(it - knots.begin() - 1, 0)),
                        knots.size() - 2);
    double dt = knots[i + 1] - knots[i];
    Vec r(x.n);
    auto c0 = pl.coeff_at(knots[i]);
    auto c1 = pl.coeff_at(knots[i + 1]);
    for (size_t k = 0; k < e; ++k) {
      double cdot = (c1[k] - c0[k]) / dt;
      if (cdot == 0.0) continue;
      Vec ek = fields[k]->value(x);
      for (int d = 0; d < x.n; ++d) r[d] += cdot * ek[d];
    }
    return r;
  };
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    double h = (knots[i + 1] - knots[i]) / substeps_per_cell;
    for (int sub = 0; sub < substeps_per_cell; ++sub) {
      double u = knots[i] + h * sub;
      Vec k1 = rhs(u, y);
      Vec k2 = rhs(u + 0.5 * h, y + (0.5 * h) * k1);
      Vec k3 = rhs(u + 0.5 * h, y + (0.5 * h) * k2);
      Vec k4 = rhs(u + h, y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!(y.norm_inf() <= guard_radius))
        throw BlowUpError("pl_ode_flow: state left the guarded region");
    }
  }
  return y;
}

Vec heun_flow(const BrownianModeField& field, const Vec& x0) {
  const auto& fields = *field.basis.fields;
  const size_t e = field.modes();
  Vec y = x0;
  for (int i = 0; i < field.grid.steps; ++i) {
    Vec incr(y.n);
    for (size_t k = 0; k < e; ++k) {
      double db = field.b(i + 1, k) - field.b(i, k);
      if (db == 0.0) continue;
      Vec ek = fields[k]->value(y);
      for (int d = 0; d < y.n; ++d) incr[d] += db * ek[d];
    }
    Vec pred = y + incr;
    Vec incr2(y.n);
    for (size_t k = 0; k < e; ++k) {
      double db = field.b(i + 1, k) - field.b(i, k);
      if (db == 0.0) continue;
      Vec ek = fields[k]->value(pred);
      for (int d = 0; d < y.n; ++d) incr2[d] += db * ek[d];
    }
    y += 0.5 * (incr + incr2);
  }
  return y;
}

WongZakaiResult wong_zakai_experiment(const WongZakaiConfig& cfg) {
  if (cfg.levels.empty()) throw ConfigError("wong_zakai: no mesh levels");
  for (size_t i = 0; i + 1 < cfg.levels.size(); ++i)
    if (!(cfg.levels[i] < cfg.levels[i + 1]))
      throw ConfigError("wong_zakai: levels must increase");
  for (int cells : cfg.levels)
    if (cells < 1 || cfg.n_sim % cells != 0)
      throw ConfigError("wong_zakai: every level must divide n_sim");

  const size_t n_levels = cfg.levels.size();
  const int R = cfg.replicates;
  // distances[level][replicate]; NaN marks a failed replicate
  std::vector<std::vector<double>> dv(n_levels, std::vector<double>(R, -1.0));
  std::vector<std::vector<double>> dw(n_levels, std::vector<double>(R, -1.0));
  std::vector<std::vector<double>> dh(n_levels, std::vector<double>(R, -1.0));
  std::vector<std::vector<double>> df(n_levels, std::vector<double>(R, -1.0));
  std::vector<int> failed(static_cast<size_t>(R), 0);

  RngStreams rng(cfg.seed);
  TimeInterval whole(0.0, cfg.T, cfg.T);

  parallel_for(R, [&](int r) {
    try {
      BrownianModeField field =
          simulate_brownian_field(cfg.basis, cfg.T, cfg.n_sim, rng.derive(r));
      GridDriverPtr natural = mode_driver(field, cfg.params);
      VelocityFieldSamples samples = VelocityFieldSamples::from_brownian(field);

      Flow rough = solve_flow(natural, whole, cfg.ode, cfg.tol_flow, cfg.k_max_flow,
                              cfg.flow_sample);
      const auto& deltas = rough.report().deltas;
      if (deltas.size() >= 2 && deltas.back() > deltas.front()) {
        failed[static_cast<size_t>(r)] = 1;  // diverging composite
        return;
      }
      std::vector<Vec> rough_end =
          rough.eval_points(0.0, cfg.T, cfg.flow_sample.points);

      for (size_t li = 0; li < n_levels; ++li) {
        int cells = cfg.levels[li];
        std::vector<double> pts(static_cast<size_t>(cells) + 1);
        for (int i = 0; i <= cells; ++i)
          pts[static_cast<size_t>(i)] = field.grid.time(i * (cfg.n_sim / cells));
        GridDriverPtr pl =
            piecewise_linear_lift(samples, Partition(std::move(pts)), cfg.params);

        DriverDistParts parts =
            driver_dist_parts(*natural, *pl, cfg.pairs, cfg.stat_sample);
        dv[li][static_cast<size_t>(r)] = parts.v_rate;
        dw[li][static_cast<size_t>(r)] = parts.w_rate;
        dh[li][static_cast<size_t>(r)] = parts.homogeneous();

        double dist = 0.0;
        for (size_t i = 0; i < cfg.flow_sample.points.size(); ++i) {
          Vec end = pl_ode_flow(*pl, cfg.flow_sample.points[i], cfg.ode_substeps,
                                cfg.ode.guard_radius);
          dist = std::max(dist, (end - rough_end[i]).norm_inf());
        }
        df[li][static_cast<size_t>(r)] = dist;
      }
    } catch (const std::exception&) {
      failed[static_cast<size_t>(r)] = 1;
    }
  });

  WongZakaiResult res;
  int n_fail = 0;
  for (int r = 0; r < R; ++r) n_fail += failed[static_cast<size_t>(r)];
  std::vector<double> meshes, homs, flows;
  for (size_t li = 0; li < n_levels; ++li) {
    WongZakaiRow row;
    row.level = cfg.levels[li];
    row.mesh = cfg.T / cfg.levels[li];
    row.n_fail = n_fail;
    std::vector<double> a, b, c, d;
    for (int r = 0; r < R; ++r) {
      if (failed[static_cast<size_t>(r)]) continue;
      a.push_back(dv[li][static_cast<size_t>(r)]);
      b.push_back(dw[li][static_cast<size_t>(r)]);
      c.push_back(dh[li][static_cast<size_t>(r)]);
      d.push_back(df[li][static_cast<size_t>(r)]);
    }
    row.median_dv = median(std::move(a));
    row.median_dw = median(std::move(b));
    row.median_homog = median(std::move(c));
    row.median_flow_dist = median(std::move(d));
    res.rows.push_back(row);
    meshes.push_back(row.mesh);
    homs.push_back(row.median_homog);
    flows.push_back(row.median_flow_dist);
  }
  res.slope_homog = loglog_slope(meshes, homs);
  res.slope_flow = loglog_slope(meshes, flows);
  return res;
}

}  // namespace roughflow

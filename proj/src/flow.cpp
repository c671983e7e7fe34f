#include "roughflow/flow/flow.hpp"

#include <cmath>

#include "roughflow/core/parallel.hpp"

namespace roughflow {

namespace {

struct FrozenRhs {
  const VectorField* v;
  const VectorField* w;
  const VectorField* drift;
  double drift_scale;

  Vec operator()(const Vec& y) const {
    Vec r = v->value(y) + w->value(y);
    if (drift) r += drift_scale * drift->value(y);
    return r;
  }
};

Vec rk4_unit_time(const FrozenRhs& rhs, Vec y, int n_sub, double guard) {
  const double h = 1.0 / n_sub;
  for (int i = 0; i < n_sub; ++i) {
    Vec k1 = rhs(y);
    Vec k2 = rhs(y + (0.5 * h) * k1);
    Vec k3 = rhs(y + (0.5 * h) * k2);
    Vec k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(y.norm_inf() <= guard))
      throw BlowUpError("mu_map: state left the guarded region");
  }
  return y;
}

FrozenRhs freeze(const RoughDriver& drv, double s, double t, const ODEConfig& cfg,
                 FieldPtr& v_keep, FieldPtr& w_keep) {
  if (!drv.queryable(s, t)) throw ConfigError("mu_map: (s,t) not queryable");
  v_keep = drv.v_field(s, t);
  w_keep = drv.w_field(s, t);
  return FrozenRhs{v_keep.get(), w_keep.get(), cfg.drift.get(), t - s};
}

double fit_rate(const std::vector<double>& deltas, double* c1_fit) {
  // least squares of log2 delta_k against k; skips zero deltas and a
  // one-level burn-in when enough levels are available
  std::vector<std::pair<double, double>> pts;
  size_t first = deltas.size() >= 4 ? 1 : 0;
  for (size_t k = first; k < deltas.size(); ++k)
    if (deltas[k] > 0.0) pts.emplace_back(static_cast<double>(k), std::log2(deltas[k]));
  if (pts.size() < 2) {
    if (c1_fit) *c1_fit = 0.0;
    return 0.0;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(pts.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  if (c1_fit) *c1_fit = std::exp2(intercept);
  return -slope;
}

}  // namespace

Vec mu_map(const RoughDriver& drv, double s, double t, const Vec& x,
           const ODEConfig& cfg) {
  cfg.validate();
  FieldPtr v, w;
  FrozenRhs rhs = freeze(drv, s, t, cfg, v, w);
  return rk4_unit_time(rhs, x, cfg.n_sub, cfg.guard_radius);
}

void mu_advance(const RoughDriver& drv, double s, double t, std::vector<Vec>& pts,
                const ODEConfig& cfg) {
  FieldPtr v, w;
  FrozenRhs rhs = freeze(drv, s, t, cfg, v, w);
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    pts[static_cast<size_t>(i)] =
        rk4_unit_time(rhs, pts[static_cast<size_t>(i)], cfg.n_sub, cfg.guard_radius);
  });
}

double euler_defect(const RoughDriver& drv, double s, double t, const ScalarField& f,
                    const SpaceSample& sample, const ODEConfig& cfg) {
  FieldPtr v = drv.v_field(s, t);
  FieldPtr w = drv.w_field(s, t);
  double m = 0.0;
  for (const auto& x : sample.points) {
    Vec y = mu_map(drv, s, t, x, cfg);
    double vf = dot(v->value(x), f.gradient(x));
    double vvf = second_level_apply(drv, s, t, f, x);
    m = std::max(m, std::abs(f.value(y) - f.value(x) - vf - vvf));
  }
  return m;
}

// --- dyadic composition -----------------------------------------------------

namespace {

std::vector<Vec> compose_over_partition(const RoughDriver& drv, const Partition& pi,
                                        std::vector<Vec> pts, const ODEConfig& cfg) {
  for (size_t i = 0; i + 1 < pi.points.size(); ++i)
    mu_advance(drv, pi.points[i], pi.points[i + 1], pts, cfg);
  return pts;
}

}  // namespace

Flow::Flow(DriverPtr drv, TimeInterval interval, ODEConfig cfg, int level,
           FlowSolveReport report)
    : drv_(std::move(drv)),
      interval_(interval),
      cfg_(cfg),
      level_(level),
      report_(std::move(report)) {}

std::vector<Vec> Flow::eval_points(double s, double t, std::vector<Vec> pts) const {
  if (s < interval_.s - 1e-12 || t > interval_.t + 1e-12 || s > t)
    throw ConfigError("Flow: query outside the solved interval");
  if (s == t) return pts;
  // compose over the solve interval's finest dyadic points inside (s,t)
  const double S = interval_.s, L = interval_.length();
  const int64_t n = int64_t{1} << level_;
  std::vector<double> cuts{s};
  for (int64_t i = 1; i < n; ++i) {
    double u = S + L * (static_cast<double>(i) / static_cast<double>(n));
    if (u > s + 1e-15 * L && u < t - 1e-15 * L) cuts.push_back(u);
  }
  cuts.push_back(t);
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    mu_advance(*drv_, cuts[i], cuts[i + 1], pts, cfg_);
  return pts;
}

Vec Flow::eval(double s, double t, const Vec& x) const {
  return eval_points(s, t, {x})[0];
}

Flow solve_flow(DriverPtr drv, const TimeInterval& interval, const ODEConfig& cfg,
                double tol_flow, int K_max, const SpaceSample& probe) {
  cfg.validate();
  if (!drv->params().well_posed() && !cfg.allow_ill_posed)
    throw ConfigError("solve_flow: rho <= p/3; set allow_ill_posed to proceed");
  if (probe.points.empty()) throw ConfigError("solve_flow: empty probe sample");
  if (K_max < 1 || K_max > kMaxDyadicLevel)
    throw ConfigError("solve_flow: K_max out of range");

  FlowSolveReport rep;
  rep.theoretical_rate = drv->params().theoretical_rate();

  std::vector<Vec> prev =
      compose_over_partition(*drv, dyadic_partition(interval, 0), probe.points, cfg);
  std::vector<std::vector<Vec>> history;
  history.push_back(prev);
  int level = 0;
  for (int k = 1; k <= K_max; ++k) {
    std::vector<Vec> cur =
        compose_over_partition(*drv, dyadic_partition(interval, k), probe.points, cfg);
    double delta = 0.0;
    for (size_t i = 0; i < cur.size(); ++i)
      delta = std::max(delta, (cur[i] - prev[i]).norm_inf());
    rep.deltas.push_back(delta);
    prev = std::move(cur);
    level = k;
    if (delta <= tol_flow) {
      rep.converged = true;
      break;
    }
  }
  rep.level_used = level;
  rep.fitted_rate = fit_rate(rep.deltas, &rep.c1_fit);

  // scale below which the composite stays within mesh^{3/p} of a single mu
  const double a = drv->params().a_exponent();
  double threshold = 0.0;
  for (int k = std::min(level, 6); k >= 1; --k) {
    const int64_t cells = int64_t{1} << k;
    double mesh = interval.length() / static_cast<double>(cells);
    bool ok = true;
    for (int64_t c : {int64_t{0}, cells / 2}) {
      double cs = interval.s + mesh * static_cast<double>(c);
      double ct = cs + mesh;
      std::vector<Vec> mu_pts = probe.points;
      mu_advance(*drv, cs, ct, mu_pts, cfg);
      std::vector<Vec> phi_pts = probe.points;
      {
        TimeInterval cell(cs, ct, interval.horizon);
        int sub_level = level - k;
        phi_pts = compose_over_partition(
            *drv, dyadic_partition(cell, std::max(sub_level, 0)), phi_pts, cfg);
      }
      double diff = 0.0;
      for (size_t i = 0; i < mu_pts.size(); ++i)
        diff = std::max(diff, (phi_pts[i] - mu_pts[i]).norm_inf());
      if (diff > std::pow(mesh, a)) {
        ok = false;
        break;
      }
    }
    if (ok)
      threshold = mesh;
    else
      break;
  }
  rep.mu_distance_threshold = threshold;

  return Flow(std::move(drv), interval, cfg, level, std::move(rep));
}

Flow inverse_flow(DriverPtr drv, const TimeInterval& interval, const ODEConfig& cfg,
                  double tol_flow, int K_max, const SpaceSample& probe) {
  DriverPtr rev = time_reverse(drv, interval.t);
  TimeInterval rev_interval(0.0, interval.length(), interval.t);
  return solve_flow(std::move(rev), rev_interval, cfg, tol_flow, K_max, probe);
}

double inversion_defect(const Flow& fwd, const Flow& rev, double s, double t,
                        const SpaceSample& sample) {
  const double a = fwd.interval().t;  // reversal endpoint used by inverse_flow
  std::vector<Vec> pts = fwd.eval_points(s, t, sample.points);
  pts = rev.eval_points(a - t, a - s, std::move(pts));
  double m = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    m = std::max(m, (pts[i] - sample.points[i]).norm_inf());
  return m;
}

double flow_property_defect(const Flow& flow, double s, double u, double t,
                            const SpaceSample& sample) {
  std::vector<Vec> two_leg = flow.eval_points(s, u, sample.points);
  two_leg = flow.eval_points(u, t, std::move(two_leg));
  std::vector<Vec> one_leg = flow.eval_points(s, t, sample.points);
  double m = 0.0;
  for (size_t i = 0; i < two_leg.size(); ++i)
    m = std::max(m, (two_leg[i] - one_leg[i]).norm_inf());
  return m;
}

double flow_holder_norm(const Flow& flow, double s, double t, const SpaceSample& sample,
                        double rho) {
  std::vector<Vec> vals = flow.eval_points(s, t, sample.points);
  double sup = 0.0;
  for (const auto& v : vals) sup = std::max(sup, v.norm_inf());
  double quot = 0.0;
  for (const auto& [x, y] : sample.pairs) {
    Vec fx = flow.eval(s, t, x);
    Vec fy = flow.eval(s, t, y);
    quot = std::max(quot, (fx - fy).norm_inf() / std::pow(dist2(x, y), rho));
  }
  return sup + quot;
}

std::vector<ContinuityRow> flow_continuity_probe(
    const GridCoeffDriver& base, const GridCoeffDriver& perturbation,
    const std::vector<double>& eps_list, const TimeInterval& interval,
    const ODEConfig& cfg, double tol_flow, int K_max, const SpaceSample& probe) {
  auto base_ptr = std::make_shared<GridCoeffDriver>(base);
  Flow base_flow = solve_flow(base_ptr, interval, cfg, tol_flow, K_max, probe);
  std::vector<Vec> base_pts =
      base_flow.eval_points(interval.s, interval.t, probe.points);

  std::vector<ContinuityRow> rows;
  for (double eps : eps_list) {
    if (eps == 0.0) {
      rows.push_back({0.0, 0.0});
      continue;
    }
    auto pert = perturbation.dilated(eps);
    auto summed = sum_grid_drivers(base, *pert);
    Flow flow = solve_flow(summed, interval, cfg, tol_flow, K_max, probe);
    std::vector<Vec> pts = flow.eval_points(interval.s, interval.t, probe.points);
    double dist = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
      dist = std::max(dist, (pts[i] - base_pts[i]).norm_inf());
    rows.push_back({eps, dist});
  }
  return rows;
}

}  // namespace roughflow

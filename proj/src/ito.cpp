#include "roughflow/sewing/ito.hpp"

#include <cmath>

namespace roughflow {

ItoReconstruction ito_reconstruct(const TimeScalarMap& F, const SampledPath& path,
                                  double s, double t, int K_max, double tol) {
  if (!F.value || !F.gradient || !F.hessian)
    throw ConfigError("ito_reconstruct: F needs value, gradient and hessian");
  const int grid_level = static_cast<int>(std::llround(std::log2(path.grid.steps)));
  if ((int64_t{1} << grid_level) != path.grid.steps)
    throw ConfigError("ito_reconstruct: path grid must have 2^k steps");
  K_max = std::min(K_max, grid_level);

  TwoIndexMap z;
  z.value_dim = 1;
  z.a_exponent = 1.2;  // 3/p for a p-Hoelder path with p < 2.5
  z.eval = [&](double u, double v) {
    Vec xu = path.at(u), xv = path.at(v);
    Vec inc = xv - xu;
    double first = dot(F.gradient(u, xu), inc);
    double second = 0.5 * dot(inc, F.hessian(u, xu).apply(inc));
    return std::vector<double>{first + second};
  };

  ItoReconstruction out;
  out.sewing = sew(z, s, t, K_max, tol);
  out.sewn_value = out.sewing.scalar();

  double time_part = 0.0;
  if (F.time_deriv) {
    // trapezoid over the path grid between s and t
    int is = path.grid.index_of(s), it = path.grid.index_of(t);
    for (int i = is; i < it; ++i) {
      double a = path.grid.time(i), b = path.grid.time(i + 1);
      time_part += 0.5 * (b - a) *
                   (F.time_deriv(a, path.values[static_cast<size_t>(i)]) +
                    F.time_deriv(b, path.values[static_cast<size_t>(i + 1)]));
    }
  }

  out.direct_increment = F.value(t, path.at(t)) - F.value(s, path.at(s));
  out.error = std::abs(out.direct_increment - time_part - out.sewn_value);
  return out;
}

FlowFunctionalResult flow_functional_sew(const Flow& flow, const RoughDriver& drv,
                                         const std::vector<Vec>& ys,
                                         const MultiPointMap& f, double s, double t,
                                         int K_max, double tol) {
  if (static_cast<int>(ys.size()) != f.points())
    throw ConfigError("flow_functional_sew: point count mismatch");

  // positions of the k tracked points at every dyadic time of level K_max,
  // advanced sequentially (the flow property holds to integrator precision)
  const int64_t n = int64_t{1} << K_max;
  std::vector<std::vector<Vec>> pos(static_cast<size_t>(n) + 1);
  pos[0] = ys;
  for (int64_t i = 0; i < n; ++i) {
    double a = s + (t - s) * (static_cast<double>(i) / static_cast<double>(n));
    double b = s + (t - s) * (static_cast<double>(i + 1) / static_cast<double>(n));
    pos[static_cast<size_t>(i + 1)] =
        flow.eval_points(a, b, pos[static_cast<size_t>(i)]);
  }

  TwoIndexMap z;
  z.value_dim = 1;
  z.a_exponent = std::max(1.05, drv.params().a_exponent());
  z.eval = [&](double u, double v) {
    double rel = (u - s) / (t - s) * static_cast<double>(n);
    int64_t iu = std::llround(rel);
    if (std::abs(rel - static_cast<double>(iu)) > 1e-9 * static_cast<double>(n))
      throw ConfigError("flow_functional_sew: off-grid sewing query");
    const std::vector<Vec>& xs = pos[static_cast<size_t>(iu)];
    FieldPtr vf = drv.v_field(u, v);
    FieldPtr wf = drv.w_field(u, v);
    double total = 0.0;
    for (int m = 0; m < f.points(); ++m) {
      const Vec& x = xs[static_cast<size_t>(m)];
      Vec grad = f.grad_m(m, xs);
      Mat hess = f.hess_mm(m, xs);
      Vec vv = vf->value(x);
      // (V^{m} + W^{m} + (1/2) V^{m} V^{m}) f, all acting on argument m
      total += dot(vv, grad);
      total += dot(wf->value(x), grad);
      total += 0.5 * (dot(vf->jacobian(x).apply(vv), grad) + dot(vv, hess.apply(vv)));
    }
    return std::vector<double>{total};
  };

  FlowFunctionalResult out;
  out.sewing = sew(z, s, t, K_max, tol);
  out.sewn_value = out.sewing.scalar();
  out.direct_increment = f.value(pos[static_cast<size_t>(n)]) - f.value(ys);
  out.error = std::abs(out.direct_increment - out.sewn_value);
  return out;
}

}  // namespace roughflow

#include "roughflow/driver/ops.hpp"

#include <cmath>

namespace roughflow {

double apply_field(const VectorField& v, const ScalarField& f, const Vec& x) {
  return dot(v.value(x), f.gradient(x));
}

double second_level_apply(const RoughDriver& drv, double s, double t,
                          const ScalarField& f, const Vec& x) {
  if (f.order() < 2)
    throw ConfigError("second_level_apply: f must be twice differentiable");
  if (!drv.queryable(s, t)) throw ConfigError("second_level_apply: (s,t) not queryable");
  FieldPtr v = drv.v_field(s, t);
  FieldPtr w = drv.w_field(s, t);

  const Vec vx = v->value(x);
  const Vec grad = f.gradient(x);
  const Mat hess = f.hessian(x);

  // V(Vf) = <(DV)(V), grad f> + V^T (Hess f) V
  double vvf = dot(v->jacobian(x).apply(vx), grad) + dot(vx, hess.apply(vx));
  double wf = dot(w->value(x), grad);
  return wf + 0.5 * vvf;
}

double additivity_defect(const RoughDriver& drv, double s, double u, double t,
                         const SpaceSample& sample) {
  FieldPtr vts = drv.v_field(s, t);
  FieldPtr vtu = drv.v_field(u, t);
  FieldPtr vus = drv.v_field(s, u);
  double m = 0.0;
  for (const auto& x : sample.points) {
    Vec r = vts->value(x) - vtu->value(x) - vus->value(x);
    m = std::max(m, r.norm_inf());
  }
  return m;
}

double chen_defect(const RoughDriver& drv, double s, double u, double t,
                   const SpaceSample& sample) {
  FieldPtr wts = drv.w_field(s, t);
  FieldPtr wtu = drv.w_field(u, t);
  FieldPtr wus = drv.w_field(s, u);
  FieldPtr vtu = drv.v_field(u, t);
  FieldPtr vus = drv.v_field(s, u);
  double m = 0.0;
  for (const auto& x : sample.points) {
    // (1/2)[V_us, V_tu] evaluated directly from values and jacobians
    Vec comm = vtu->jacobian(x).apply(vus->value(x)) -
               vus->jacobian(x).apply(vtu->value(x));
    Vec r = wts->value(x) - wtu->value(x) - wus->value(x) - 0.5 * comm;
    m = std::max(m, r.norm_inf());
  }
  return m;
}

double leibniz_defect(const RoughDriver& drv, double s, double t,
                      const SpaceSample& sample, const ScalarField& f,
                      const ScalarField& g, double eps) {
  FieldPtr w = drv.w_field(s, t);
  double m = 0.0;
  for (const auto& x : sample.points) {
    Vec wx = w->value(x);
    double nrm = wx.norm2();
    if (nrm < 1e-14) continue;
    Vec step = (eps / nrm) * wx;
    Vec xp = x + step, xm = x - step;
    double lhs = (f.value(xp) * g.value(xp) - f.value(xm) * g.value(xm)) /
                 (2.0 * eps) * nrm;
    double rhs = f.value(x) * dot(wx, g.gradient(x)) + g.value(x) * dot(wx, f.gradient(x));
    m = std::max(m, std::abs(lhs - rhs));
  }
  return m;
}

}  // namespace roughflow

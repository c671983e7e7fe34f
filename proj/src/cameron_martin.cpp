#include "roughflow/stochastic/cameron_martin.hpp"

#include <cmath>
#include <limits>

namespace roughflow {

CameronMartinPath::CameronMartinPath(std::vector<double> knots_,
                                     std::vector<double> hdot_,
                                     std::vector<double> lambda_, double sigma)
    : knots(std::move(knots_)),
      hdot(std::move(hdot_)),
      lambda(std::move(lambda_)),
      sigma_gamma(sigma) {
  if (knots.size() < 2 || knots.front() != 0.0)
    throw ConfigError("CameronMartinPath: knots must start at 0");
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i] < knots[i + 1]))
      throw ConfigError("CameronMartinPath: knots must increase");
  if (hdot.size() != (knots.size() - 1) * lambda.size())
    throw ConfigError("CameronMartinPath: hdot size mismatch");
  for (double l : lambda)
    if (!(l > 0.0))
      throw ConfigError("CameronMartinPath: mode weights must be positive");
}

std::vector<double> CameronMartinPath::value_at(double u) const {
  const size_t e = ell();
  std::vector<double> h(e, 0.0);
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    if (u <= knots[i]) break;
    double seg = std::min(u, knots[i + 1]) - knots[i];
    for (size_t k = 0; k < e; ++k) h[k] += seg * hdot[i * e + k];
  }
  return h;
}

double cm_inner(const CameronMartinPath& h1, const CameronMartinPath& h2) {
  if (h1.knots != h2.knots || h1.lambda != h2.lambda)
    throw ConfigError("cm_inner: paths must share grid and weights");
  const size_t e = h1.ell();
  double total = 0.0;
  for (size_t i = 0; i + 1 < h1.knots.size(); ++i) {
    double dt = h1.knots[i + 1] - h1.knots[i];
    for (size_t k = 0; k < e; ++k)
      total += h1.hdot[i * e + k] * h2.hdot[i * e + k] / h1.lambda[k] * dt;
  }
  return total;
}

double sigma_gamma_proxy(const ModeBasis& basis, const SpaceSample& sample) {
  double s2 = 0.0;
  for (size_t k = 0; k < basis.count(); ++k) {
    double sup = 0.0;
    for (const auto& x : sample.points)
      sup = std::max(sup, (*basis.fields)[k]->value(x).norm_inf());
    s2 += basis.lambda[k] * sup * sup;
  }
  return std::sqrt(s2);
}

double sigma_gamma_mc(const ModeBasis& basis, const SpaceSample& sample, int draws,
                      uint64_t seed) {
  NormalSampler normal(seed);
  const size_t e = basis.count();
  double acc = 0.0;
  std::vector<double> b(e);
  for (int d = 0; d < draws; ++d) {
    for (size_t k = 0; k < e; ++k) b[k] = std::sqrt(basis.lambda[k]) * normal();
    double sup = 0.0;
    for (const auto& x : sample.points) {
      Vec v(basis.dim());
      for (size_t k = 0; k < e; ++k) {
        if (b[k] == 0.0) continue;
        Vec ek = (*basis.fields)[k]->value(x);
        for (int i = 0; i < v.n; ++i) v[i] += b[k] * ek[i];
      }
      sup = std::max(sup, v.norm_inf());
    }
    acc += sup * sup;
  }
  return std::sqrt(acc / draws);
}

namespace {

// C^0 sample norm of the field sum_k c_k e_k
double field_c0_norm(const ModeBasis& basis, const std::vector<double>& c,
                     const SpaceSample& sample) {
  double sup = 0.0;
  for (const auto& x : sample.points) {
    Vec v(basis.dim());
    for (size_t k = 0; k < basis.count(); ++k) {
      if (c[k] == 0.0) continue;
      Vec ek = (*basis.fields)[k]->value(x);
      for (int i = 0; i < v.n; ++i) v[i] += c[k] * ek[i];
    }
    sup = std::max(sup, v.norm_inf());
  }
  return sup;
}

}  // namespace

CmBoundsReport cm_bounds_check(const CameronMartinPath& h, const ModeBasis& basis,
                               const SpaceSample& sample, double s, double t) {
  if (!(0.0 <= s && s < t && t <= h.horizon() + 1e-12))
    throw ConfigError("cm_bounds_check: need 0 <= s < t <= T");
  const double energy = cm_inner(h, h);
  const double bound = h.sigma_gamma * std::sqrt(t - s) * std::sqrt(energy);

  CmBoundsReport rep;
  std::vector<double> hs = h.value_at(s), ht = h.value_at(t);
  std::vector<double> inc(h.ell());
  for (size_t k = 0; k < h.ell(); ++k) inc[k] = ht[k] - hs[k];
  rep.increment_norm = field_c0_norm(basis, inc, sample);
  rep.increment_bound = bound;

  // 1-variation over the knots inside [s,t] plus the cut endpoints
  std::vector<double> cuts{s};
  for (double u : h.knots)
    if (u > s + 1e-15 && u < t - 1e-15) cuts.push_back(u);
  cuts.push_back(t);
  double var = 0.0;
  std::vector<double> prev = h.value_at(cuts[0]);
  for (size_t i = 1; i < cuts.size(); ++i) {
    std::vector<double> cur = h.value_at(cuts[i]);
    std::vector<double> d(h.ell());
    for (size_t k = 0; k < h.ell(); ++k) d[k] = cur[k] - prev[k];
    var += field_c0_norm(basis, d, sample);
    prev = std::move(cur);
  }
  rep.variation = var;
  rep.variation_bound = bound;
  return rep;
}

RateFunctionResult rate_function(const CameronMartinPath& h) {
  RateFunctionResult r;
  r.value = 0.5 * cm_inner(h, h);
  r.finite = true;
  return r;
}

namespace {

// quadratic energy of the coefficient path restricted to a dyadic subgrid
double dyadic_energy(const std::vector<double>& knots, const std::vector<double>& coeff,
                     const std::vector<double>& lambda, int level) {
  const size_t e = lambda.size();
  const size_t cells = knots.size() - 1;
  const size_t stride = cells >> level;
  double total = 0.0;
  for (size_t i = 0; i + stride <= cells; i += stride) {
    double dt = knots[i + stride] - knots[i];
    for (size_t k = 0; k < e; ++k) {
      double dc = coeff[(i + stride) * e + k] - coeff[i * e + k];
      total += dc * dc / lambda[k] / dt;
    }
  }
  return total;
}

}  // namespace

RateFunctionResult rate_function(const GridCoeffDriver& drv) {
  RateFunctionResult r;
  const auto& knots = drv.knots();
  const size_t cells = knots.size() - 1;
  int max_level = 0;
  while ((size_t{1} << (max_level + 1)) <= cells) ++max_level;
  if ((size_t{1} << max_level) != cells)
    throw ConfigError("rate_function: driver grid must have 2^k cells");

  std::vector<double> lambda = drv.basis().lambda;
  for (double& l : lambda)
    if (l <= 0.0) l = 1.0;  // zero-weight modes carry no randomness

  std::vector<double> coeff(knots.size() * drv.modes());
  for (size_t i = 0; i < knots.size(); ++i) {
    auto c = drv.coeff_at(knots[i]);
    for (size_t k = 0; k < drv.modes(); ++k) coeff[i * drv.modes() + k] = c[k];
  }

  // refinement sweep: square-integrable derivatives stabilize the energy,
  // Brownian coefficient samples double it per level
  if (max_level < 1) throw ConfigError("rate_function: grid too coarse for the sweep");
  double cur = dyadic_energy(knots, coeff, lambda, max_level);
  double base = dyadic_energy(knots, coeff, lambda, max_level - 1);
  r.refinement_ratio = base > 0.0 ? cur / base : 1.0;
  if (r.refinement_ratio > 1.25 || !std::isfinite(cur)) {
    r.finite = false;
    r.value = std::numeric_limits<double>::infinity();
    return r;
  }
  r.value = 0.5 * cur;
  return r;
}

SmoothLiftReport smooth_lift(const CameronMartinPath& h, const ModeBasis& basis,
                             const SpaceSample& sample, DriverParams params,
                             const TimePairs& pairs) {
  if (h.ell() != basis.count())
    throw ConfigError("smooth_lift: mode count mismatch");
  const size_t e = h.ell();
  // exact piecewise-linear coefficients c = int hdot
  std::vector<double> coeff(h.knots.size() * e, 0.0);
  for (size_t i = 0; i + 1 < h.knots.size(); ++i) {
    double dt = h.knots[i + 1] - h.knots[i];
    for (size_t k = 0; k < e; ++k)
      coeff[(i + 1) * e + k] = coeff[i * e + k] + dt * h.hdot[i * e + k];
  }
  ModeBasis b = basis;
  b.lambda = h.lambda;
  auto driver = std::make_shared<GridCoeffDriver>(std::move(b), h.knots,
                                                  std::move(coeff), params,
                                                  /*interpolating=*/true);

  SmoothLiftReport rep;
  rep.driver = driver;
  const double energy = cm_inner(h, h);
  const double rho = params.rho;

  for (const auto& [s, t] : pairs) {
    double v = holder_field_norm(*driver->v_field(s, t), sample, 2, rho);
    double w = holder_field_norm(*driver->w_field(s, t), sample, 1, rho);
    rep.v_rate = std::max(rep.v_rate, v / std::sqrt(t - s));
    rep.w_rate = std::max(rep.w_rate, w / (t - s));
  }

  // Cauchy-Schwarz constants from the basis, in the norms the rates use
  double sigma_v2 = 0.0;
  for (size_t k = 0; k < e; ++k) {
    double nk = holder_field_norm(*(*basis.fields)[k], sample, 2, rho);
    sigma_v2 += h.lambda[k] * nk * nk;
  }
  double cw2 = 0.0;
  for (size_t j = 0; j < e; ++j)
    for (size_t k = 0; k < e; ++k) {
      std::vector<double> unit(e * e, 0.0);
      unit[j * e + k] = 1.0;
      PairingField pjk(basis.fields, std::move(unit));
      double njk = holder_field_norm(pjk, sample, 1, rho);
      cw2 += h.lambda[j] * h.lambda[k] * njk * njk;
    }
  rep.v_bound = std::sqrt(sigma_v2) * std::sqrt(energy);
  rep.w_bound = std::sqrt(cw2) * energy;
  rep.constant_C =
      h.sigma_gamma > 0.0 ? std::sqrt(cw2) / (h.sigma_gamma * h.sigma_gamma) : 0.0;
  return rep;
}

CameronMartinPath random_cm_path(const ModeBasis& basis, const SpaceSample& sample,
                                 double T, int cells, double scale, uint64_t seed) {
  NormalSampler normal(seed);
  const size_t e = basis.count();
  std::vector<double> knots(static_cast<size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) knots[static_cast<size_t>(i)] = T * i / cells;
  std::vector<double> hdot(static_cast<size_t>(cells) * e);
  for (double& v : hdot) v = scale * normal();
  std::vector<double> lambda = basis.lambda;
  for (double& l : lambda)
    if (!(l > 0.0)) l = 1.0;
  double sigma = sigma_gamma_proxy(basis, sample);
  return CameronMartinPath(std::move(knots), std::move(hdot), std::move(lambda), sigma);
}

}  // namespace roughflow

#include "roughflow/lift/brownian_field.hpp"

#include <cmath>

namespace roughflow {

double BrownianModeField::area(double s, double t, size_t j, size_t k) const {
  const size_t ell = modes();
  const int is = grid.index_of(s), it = grid.index_of(t);
  auto cum = [&](int i, size_t jj, size_t kk) {
    return cum_area[(static_cast<size_t>(i) * ell + jj) * ell + kk];
  };
  double cs_j = b(is, j), cs_k = b(is, k);
  double ct_j = b(it, j), ct_k = b(it, k);
  return cum(it, j, k) - cum(is, j, k) -
         0.5 * (cs_j * (ct_k - cs_k) - cs_k * (ct_j - cs_j));
}

BrownianModeField simulate_brownian_field(const ModeBasis& basis, double T, int n_sim,
                                          uint64_t seed) {
  if (n_sim < 2) throw ConfigError("simulate_brownian_field: N_sim >= 2 required");
  if (!(T > 0.0)) throw ConfigError("simulate_brownian_field: T > 0 required");
  const size_t ell = basis.count();

  BrownianModeField f;
  f.basis = basis;
  f.grid = TimeGrid(T, n_sim);
  f.seed = seed;
  f.coeff.assign(static_cast<size_t>(n_sim + 1) * ell, 0.0);

  NormalSampler normal(seed);
  const double dt = f.grid.dt();
  std::vector<double> scale(ell);
  for (size_t k = 0; k < ell; ++k) scale[k] = std::sqrt(basis.lambda[k] * dt);

  for (int i = 0; i < n_sim; ++i)
    for (size_t k = 0; k < ell; ++k) {
      double db = scale[k] * normal();
      f.coeff[static_cast<size_t>(i + 1) * ell + k] =
          f.coeff[static_cast<size_t>(i) * ell + k] + db;
    }

  // midpoint-rule Levy areas; for the antisymmetric part the midpoint value
  // B_left + dB/2 contributes exactly like the left point, and the area-Chen
  // relation holds on the grid by construction
  f.cum_area = accumulate_path_areas(f.coeff, static_cast<size_t>(n_sim) + 1, ell);
  return f;
}

GridDriverPtr mode_driver(const BrownianModeField& field, DriverParams params) {
  std::vector<double> knots(static_cast<size_t>(field.grid.steps) + 1);
  for (int i = 0; i <= field.grid.steps; ++i)
    knots[static_cast<size_t>(i)] = field.grid.time(i);
  return std::make_shared<GridCoeffDriver>(field.basis, std::move(knots), field.coeff,
                                           field.cum_area, params,
                                           /*interpolating=*/false);
}

VelocityFieldSamples VelocityFieldSamples::from_brownian(const BrownianModeField& field) {
  VelocityFieldSamples s;
  s.basis = field.basis;
  s.times.resize(static_cast<size_t>(field.grid.steps) + 1);
  for (int i = 0; i <= field.grid.steps; ++i)
    s.times[static_cast<size_t>(i)] = field.grid.time(i);
  s.coeff = field.coeff;
  return s;
}

GridDriverPtr piecewise_linear_lift(const VelocityFieldSamples& samples,
                                    const Partition& D, DriverParams params) {
  if (D.points.size() < 2) throw ConfigError("piecewise_linear_lift: empty partition");
  const size_t ell = samples.basis.count();
  const double T = samples.times.back();
  std::vector<double> knots = D.points;
  if (std::abs(knots.front()) > 1e-12 * T || std::abs(knots.back() - T) > 1e-12 * T)
    throw ConfigError("piecewise_linear_lift: D must span [0, T]");

  std::vector<double> coeffs(knots.size() * ell);
  size_t pos = 0;
  for (size_t i = 0; i < knots.size(); ++i) {
    // D must be a subset of the sample times
    while (pos < samples.times.size() &&
           samples.times[pos] < knots[i] - 1e-9 * T)
      ++pos;
    if (pos >= samples.times.size() ||
        std::abs(samples.times[pos] - knots[i]) > 1e-9 * T)
      throw ConfigError("piecewise_linear_lift: D is not a subset of sample times");
    for (size_t k = 0; k < ell; ++k) coeffs[i * ell + k] = samples.coeff[pos * ell + k];
  }
  return std::make_shared<GridCoeffDriver>(samples.basis, std::move(knots),
                                           std::move(coeffs), params,
                                           /*interpolating=*/true);
}

}  // namespace roughflow

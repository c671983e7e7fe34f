#include "roughflow/lift/rough_path.hpp"

#include <cmath>

namespace roughflow {

std::vector<double> RoughPath::increment(double s, double t) const {
  const int is = grid.index_of(s), it = grid.index_of(t);
  std::vector<double> out(static_cast<size_t>(ell));
  for (int k = 0; k < ell; ++k)
    out[static_cast<size_t>(k)] = x[static_cast<size_t>(it) * ell + k] -
                                  x[static_cast<size_t>(is) * ell + k];
  return out;
}

std::vector<double> RoughPath::second_level(double s, double t) const {
  const int is = grid.index_of(s), it = grid.index_of(t);
  const size_t e = static_cast<size_t>(ell);
  std::vector<double> out(e * e);
  for (size_t j = 0; j < e; ++j)
    for (size_t k = 0; k < e; ++k) {
      double xs_j = x[static_cast<size_t>(is) * e + j];
      double inc_k = x[static_cast<size_t>(it) * e + k] - x[static_cast<size_t>(is) * e + k];
      out[j * e + k] = xx[(static_cast<size_t>(it) * e + j) * e + k] -
                       xx[(static_cast<size_t>(is) * e + j) * e + k] - xs_j * inc_k;
    }
  return out;
}

double RoughPath::sym_defect(int max_pairs) const {
  double m = 0.0;
  const int n = grid.steps;
  const int stride = std::max(1, n / max_pairs);
  for (int i = 0; i < n; i += stride) {
    int j = std::min(n, i + std::max(1, n / 8));
    auto inc = increment(grid.time(i), grid.time(j));
    auto lvl2 = second_level(grid.time(i), grid.time(j));
    for (int a = 0; a < ell; ++a)
      for (int b = 0; b < ell; ++b) {
        double sym = 0.5 * (lvl2[static_cast<size_t>(a) * ell + b] +
                            lvl2[static_cast<size_t>(b) * ell + a]);
        m = std::max(m, std::abs(sym - 0.5 * inc[static_cast<size_t>(a)] *
                                           inc[static_cast<size_t>(b)]));
      }
  }
  return m;
}

double RoughPath::chen_defect(int max_triples) const {
  double m = 0.0;
  const int n = grid.steps;
  const int stride = std::max(1, n / max_triples);
  for (int i = 0; i + 2 < n; i += stride) {
    int u = i + std::max(1, n / 16);
    int t = std::min(n, u + std::max(1, n / 16));
    if (u >= t) continue;
    double ts = grid.time(i), tu = grid.time(u), tt = grid.time(t);
    auto full = second_level(ts, tt);
    auto left = second_level(ts, tu);
    auto right = second_level(tu, tt);
    auto inc_us = increment(ts, tu);
    auto inc_tu = increment(tu, tt);
    for (int a = 0; a < ell; ++a)
      for (int b = 0; b < ell; ++b) {
        size_t idx = static_cast<size_t>(a) * ell + b;
        double chen = full[idx] - left[idx] - right[idx] -
                      inc_us[static_cast<size_t>(a)] * inc_tu[static_cast<size_t>(b)];
        m = std::max(m, std::abs(chen));
      }
  }
  return m;
}

RoughPath RoughPath::from_path(const std::function<std::vector<double>(double)>& path,
                               int ell, double T, int n_steps, double p) {
  RoughPath rp;
  rp.ell = ell;
  rp.p = p;
  rp.grid = TimeGrid(T, n_steps);
  const size_t e = static_cast<size_t>(ell);
  rp.x.assign((static_cast<size_t>(n_steps) + 1) * e, 0.0);
  rp.xx.assign((static_cast<size_t>(n_steps) + 1) * e * e, 0.0);

  std::vector<double> x0 = path(0.0);
  for (int i = 0; i <= n_steps; ++i) {
    std::vector<double> xi = path(rp.grid.time(i));
    for (size_t k = 0; k < e; ++k)
      rp.x[static_cast<size_t>(i) * e + k] = xi[k] - x0[k];
  }
  for (int i = 0; i < n_steps; ++i) {
    double tm = 0.5 * (rp.grid.time(i) + rp.grid.time(i + 1));
    std::vector<double> xm = path(tm);
    // per-step int (X_u - X_i) (x) dX_u over the two half-chords
    std::vector<double> p1(e), p2(e);
    for (size_t k = 0; k < e; ++k) {
      p1[k] = (xm[k] - x0[k]) - rp.x[static_cast<size_t>(i) * e + k];
      p2[k] = rp.x[(static_cast<size_t>(i) + 1) * e + k] - (xm[k] - x0[k]);
    }
    const double* xi = &rp.x[static_cast<size_t>(i) * e];
    const double* prev = &rp.xx[static_cast<size_t>(i) * e * e];
    double* next = &rp.xx[(static_cast<size_t>(i) + 1) * e * e];
    for (size_t a = 0; a < e; ++a)
      for (size_t b = 0; b < e; ++b) {
        double step = 0.5 * p1[a] * p1[b] + p1[a] * p2[b] + 0.5 * p2[a] * p2[b];
        next[a * e + b] = prev[a * e + b] + xi[a] * (p1[b] + p2[b]) + step;
      }
  }
  return rp;
}

RoughPath RoughPath::from_data(int ell, double p, TimeGrid grid, std::vector<double> x,
                               std::vector<double> xx) {
  RoughPath rp;
  rp.ell = ell;
  rp.p = p;
  rp.grid = grid;
  rp.x = std::move(x);
  rp.xx = std::move(xx);
  const size_t e = static_cast<size_t>(ell);
  const size_t n = static_cast<size_t>(grid.steps) + 1;
  if (rp.x.size() != n * e || rp.xx.size() != n * e * e)
    throw ConfigError("RoughPath: buffer sizes do not match the grid");
  return rp;
}

GridDriverPtr lift_rough_path(const std::vector<FieldPtr>& fields, const RoughPath& rp,
                              DriverParams params, double tol) {
  if (static_cast<int>(fields.size()) != rp.ell)
    throw ConfigError("lift_rough_path: field count must match path dimension");
  for (const auto& f : fields)
    if (f->order() < 3) throw ConfigError("lift_rough_path: fields must have order >= 3");
  double defect = rp.sym_defect();
  if (defect > tol)
    throw ConfigError("lift_rough_path: path is not weak geometric (Sym defect " +
                      std::to_string(defect) + ")");

  const size_t e = static_cast<size_t>(rp.ell);
  const size_t n = static_cast<size_t>(rp.grid.steps) + 1;
  std::vector<double> knots(n);
  for (size_t i = 0; i < n; ++i) knots[i] = rp.grid.time(static_cast<int>(i));

  // cumulative antisymmetric areas from the stored second level
  std::vector<double> cum(n * e * e);
  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < e; ++a)
      for (size_t b = 0; b < e; ++b)
        cum[(i * e + a) * e + b] =
            0.5 * (rp.xx[(i * e + a) * e + b] - rp.xx[(i * e + b) * e + a]);

  ModeBasis basis(fields, std::vector<double>(e, 1.0));
  return std::make_shared<GridCoeffDriver>(std::move(basis), std::move(knots), rp.x,
                                           std::move(cum), params,
                                           /*interpolating=*/false);
}

}  // namespace roughflow

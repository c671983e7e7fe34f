#include "roughflow/lift/coeff_driver.hpp"

#include <algorithm>
#include <cmath>

namespace roughflow {

std::vector<double> accumulate_path_areas(const std::vector<double>& coeffs,
                                          size_t n_knots, size_t ell) {
  std::vector<double> cum(n_knots * ell * ell, 0.0);
  for (size_t i = 0; i + 1 < n_knots; ++i) {
    const double* c0 = &coeffs[i * ell];
    const double* c1 = &coeffs[(i + 1) * ell];
    const double* prev = &cum[i * ell * ell];
    double* next = &cum[(i + 1) * ell * ell];
    for (size_t j = 0; j < ell; ++j)
      for (size_t k = 0; k < ell; ++k) {
        double wedge = 0.5 * (c0[j] * (c1[k] - c0[k]) - c0[k] * (c1[j] - c0[j]));
        next[j * ell + k] = prev[j * ell + k] + wedge;
      }
  }
  return cum;
}

GridCoeffDriver::GridCoeffDriver(ModeBasis basis, std::vector<double> knots,
                                 std::vector<double> coeffs_row_major,
                                 DriverParams params, bool interpolating)
    : basis_(std::move(basis)),
      knots_(std::move(knots)),
      coeffs_(std::move(coeffs_row_major)),
      params_(params),
      interpolating_(interpolating),
      ell_(basis_.count()) {
  cum_area_ = accumulate_path_areas(coeffs_, knots_.size(), ell_);
  init();
}

GridCoeffDriver::GridCoeffDriver(ModeBasis basis, std::vector<double> knots,
                                 std::vector<double> coeffs_row_major,
                                 std::vector<double> cum_area, DriverParams params,
                                 bool interpolating)
    : basis_(std::move(basis)),
      knots_(std::move(knots)),
      coeffs_(std::move(coeffs_row_major)),
      cum_area_(std::move(cum_area)),
      params_(params),
      interpolating_(interpolating),
      ell_(basis_.count()) {
  if (cum_area_.size() != knots_.size() * ell_ * ell_)
    throw ConfigError("GridCoeffDriver: area buffer size mismatch");
  init();
}

void GridCoeffDriver::init() {
  if (knots_.size() < 2) throw ConfigError("GridCoeffDriver: need >= 2 knots");
  if (knots_.front() != 0.0) throw ConfigError("GridCoeffDriver: knots start at 0");
  for (size_t i = 0; i + 1 < knots_.size(); ++i)
    if (!(knots_[i] < knots_[i + 1]))
      throw ConfigError("GridCoeffDriver: knots must increase");
  if (coeffs_.size() != knots_.size() * ell_)
    throw ConfigError("GridCoeffDriver: coefficient buffer size mismatch");

  const size_t n = knots_.size() - 1;
  const double h = knots_.back() / static_cast<double>(n);
  uniform_ = true;
  for (size_t i = 0; i < knots_.size(); ++i)
    if (std::abs(knots_[i] - static_cast<double>(i) * h) > 1e-9 * knots_.back()) {
      uniform_ = false;
      break;
    }
  if (uniform_) uniform_grid_ = TimeGrid(knots_.back(), static_cast<int>(n));
}

size_t GridCoeffDriver::locate(double u) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
  size_t i = static_cast<size_t>(it - knots_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, knots_.size() - 2);
}

bool GridCoeffDriver::queryable(double s, double t) const {
  if (!(0.0 <= s && s <= t && t <= horizon() + 1e-12 * horizon())) return false;
  if (interpolating_) return true;
  if (uniform_) return uniform_grid_.aligned(s) && uniform_grid_.aligned(t);
  auto on_knot = [&](double u) {
    size_t i = locate(u);
    double tol = 1e-9 * horizon();
    return std::abs(knots_[i] - u) <= tol || std::abs(knots_[i + 1] - u) <= tol;
  };
  return on_knot(s) && on_knot(t);
}

std::vector<double> GridCoeffDriver::coeff_at(double u) const {
  if (!interpolating_) {
    // snap to the stored grid; off-grid queries are rejected upstream
    size_t i;
    if (uniform_) {
      i = static_cast<size_t>(uniform_grid_.index_of(u));
    } else {
      i = locate(u);
      double tol = 1e-9 * horizon();
      if (std::abs(knots_[i + 1] - u) <= tol)
        i = i + 1;
      else if (std::abs(knots_[i] - u) > tol)
        throw ConfigError("GridCoeffDriver: off-grid time query");
    }
    return std::vector<double>(coeffs_.begin() + static_cast<long>(i * ell_),
                               coeffs_.begin() + static_cast<long>((i + 1) * ell_));
  }
  size_t i = locate(u);
  double t0 = knots_[i], t1 = knots_[i + 1];
  double w = std::clamp((u - t0) / (t1 - t0), 0.0, 1.0);
  std::vector<double> c(ell_);
  for (size_t k = 0; k < ell_; ++k)
    c[k] = (1.0 - w) * coeff(i, k) + w * coeff(i + 1, k);
  return c;
}

std::vector<double> GridCoeffDriver::v_coefficients(double s, double t) const {
  std::vector<double> cs = coeff_at(s), ct = coeff_at(t);
  for (size_t k = 0; k < ell_; ++k) ct[k] -= cs[k];
  return ct;
}

std::vector<double> GridCoeffDriver::area_between(double s, double t) const {
  if (!queryable(s, t)) throw ConfigError("GridCoeffDriver: (s,t) not queryable");
  // cumulative area at an arbitrary time u: the last segment is straight,
  // so a_u = a_g + (1/2) c_g /\ (c_u - c_g) for the knot g just below u
  auto cum_at = [&](double u, std::vector<double>& a, std::vector<double>& cu) {
    cu = coeff_at(u);
    size_t g;
    if (!interpolating_ && uniform_) {
      g = static_cast<size_t>(uniform_grid_.index_of(u));
    } else {
      g = locate(u);
      if (std::abs(knots_[g + 1] - u) <= 1e-9 * horizon()) g = g + 1;
    }
    a.assign(cum_area_.begin() + static_cast<long>(g * ell_ * ell_),
             cum_area_.begin() + static_cast<long>((g + 1) * ell_ * ell_));
    const double* cg = &coeffs_[g * ell_];
    for (size_t j = 0; j < ell_; ++j)
      for (size_t k = 0; k < ell_; ++k)
        a[j * ell_ + k] += 0.5 * (cg[j] * (cu[k] - cg[k]) - cg[k] * (cu[j] - cg[j]));
  };

  std::vector<double> at, as, ct, cs;
  cum_at(t, at, ct);
  cum_at(s, as, cs);
  // A_ts = a_t - a_s - (1/2) c_s /\ (c_t - c_s)
  std::vector<double> out(ell_ * ell_);
  for (size_t j = 0; j < ell_; ++j)
    for (size_t k = 0; k < ell_; ++k)
      out[j * ell_ + k] = at[j * ell_ + k] - as[j * ell_ + k] -
                          0.5 * (cs[j] * (ct[k] - cs[k]) - cs[k] * (ct[j] - cs[j]));
  return out;
}

FieldPtr GridCoeffDriver::v_field(double s, double t) const {
  if (!queryable(s, t)) throw ConfigError("GridCoeffDriver: (s,t) not queryable");
  return std::make_shared<LinearCombField>(basis_.fields, v_coefficients(s, t));
}

FieldPtr GridCoeffDriver::w_field(double s, double t) const {
  return std::make_shared<PairingField>(basis_.fields, area_between(s, t));
}

std::shared_ptr<GridCoeffDriver> GridCoeffDriver::dilated(double eps) const {
  if (!(eps > 0.0)) throw ConfigError("dilated: eps must be positive");
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= eps;
  std::vector<double> a = cum_area_;
  for (double& v : a) v *= eps * eps;
  return std::make_shared<GridCoeffDriver>(basis_, knots_, std::move(c), std::move(a),
                                           params_, interpolating_);
}

std::shared_ptr<GridCoeffDriver> GridCoeffDriver::reversed_from(double a) const {
  if (!uniform_)
    throw ConfigError("reversed_from: materialized reversal needs a uniform grid");
  const int m = uniform_grid_.index_of(a);
  if (m < 1) throw ConfigError("reversed_from: a must be positive");
  // index reflection: the reversed coefficient path is c(a - u), whose
  // increments give the negated reflected V and whose areas flip sign
  std::vector<double> knots(knots_.begin(), knots_.begin() + m + 1);
  std::vector<double> c(static_cast<size_t>(m + 1) * ell_);
  for (int j = 0; j <= m; ++j)
    for (size_t k = 0; k < ell_; ++k)
      c[static_cast<size_t>(j) * ell_ + k] = coeff(static_cast<size_t>(m - j), k);
  return std::make_shared<GridCoeffDriver>(basis_, std::move(knots), std::move(c),
                                           params_, interpolating_);
}

std::shared_ptr<GridCoeffDriver> sum_grid_drivers(const GridCoeffDriver& a,
                                                  const GridCoeffDriver& b) {
  if (!(a.params() == b.params()))
    throw ConfigError("sum_grid_drivers: drivers must share (p, rho)");
  if (std::abs(a.horizon() - b.horizon()) > 1e-12 * a.horizon())
    throw ConfigError("sum_grid_drivers: horizons differ");
  if (a.dim() != b.dim()) throw ConfigError("sum_grid_drivers: dimension mismatch");

  // merged knot set; each path is evaluated by its own interpolation rule
  std::vector<double> knots = a.knots();
  if (b.knots() != knots) {
    knots.insert(knots.end(), b.knots().begin(), b.knots().end());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [&](double x, double y) {
                              return std::abs(x - y) <= 1e-12 * a.horizon();
                            }),
                knots.end());
    if (!a.interpolating() || !b.interpolating()) {
      // a grid-locked summand must already contain every merged knot
      auto contains_all = [&](const GridCoeffDriver& d) {
        if (d.interpolating()) return true;
        for (double u : knots)
          if (!d.queryable(0.0, u)) return false;
        return true;
      };
      if (!contains_all(a) || !contains_all(b))
        throw ConfigError("sum_grid_drivers: grid-locked summand misses knots");
    }
  }

  const size_t ea = a.modes(), eb = b.modes(), ell = ea + eb;
  std::vector<FieldPtr> fields = *a.basis().fields;
  fields.insert(fields.end(), b.basis().fields->begin(), b.basis().fields->end());
  std::vector<double> lambda = a.basis().lambda;
  lambda.insert(lambda.end(), b.basis().lambda.begin(), b.basis().lambda.end());
  ModeBasis basis(std::move(fields), std::move(lambda),
                  std::max(a.basis().eta, b.basis().eta));

  std::vector<double> coeffs(knots.size() * ell);
  for (size_t i = 0; i < knots.size(); ++i) {
    std::vector<double> ca = a.coeff_at(knots[i]);
    std::vector<double> cb = b.coeff_at(knots[i]);
    for (size_t k = 0; k < ea; ++k) coeffs[i * ell + k] = ca[k];
    for (size_t k = 0; k < eb; ++k) coeffs[i * ell + ea + k] = cb[k];
  }
  // the stacked path's accumulated areas carry the cross terms between the
  // two summands; the diagonal blocks reproduce each summand's own areas
  return std::make_shared<GridCoeffDriver>(
      std::move(basis), std::move(knots), std::move(coeffs), a.params(),
      a.interpolating() && b.interpolating());
}

}  // namespace roughflow

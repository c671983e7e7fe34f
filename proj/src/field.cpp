#include "roughflow/core/field.hpp"

#include <string>

namespace roughflow {

void VectorField::order_error(int requested) const {
  throw ConfigError("field derivative of order " + std::to_string(requested) +
                    " requested, declared order is " + std::to_string(order()));
}

Mat VectorField::jacobian(const Vec&) const { order_error(1); }
Ten3 VectorField::second(const Vec&) const { order_error(2); }
Ten4 VectorField::third(const Vec&) const { order_error(3); }

Mat ScalarField::hessian(const Vec&) const {
  throw ConfigError("scalar field hessian requested beyond declared order");
}
Ten3 ScalarField::third(const Vec&) const {
  throw ConfigError("scalar field third derivative requested beyond declared order");
}

Mat CallbackScalarField::hessian(const Vec& x) const {
  if (!f2_) return ScalarField::hessian(x);
  return f2_(x);
}
Ten3 CallbackScalarField::third(const Vec& x) const {
  if (!f3_) return ScalarField::third(x);
  return f3_(x);
}

// --- finite differences -----------------------------------------------------

Mat FiniteDiffField::jacobian(const Vec& x) const {
  if (order_ < 1) order_error(1);
  const int d = dim();
  Mat m(d);
  for (int j = 0; j < d; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h_;
    xm[j] -= h_;
    Vec fp = base_->value(xp), fm = base_->value(xm);
    for (int i = 0; i < d; ++i) m(i, j) = (fp[i] - fm[i]) / (2.0 * h_);
  }
  return m;
}

Ten3 FiniteDiffField::second(const Vec& x) const {
  if (order_ < 2) order_error(2);
  const int d = dim();
  Ten3 t(d);
  const Vec f0 = base_->value(x);
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k) {
      Vec v(d);
      if (j == k) {
        Vec xp = x, xm = x;
        xp[j] += h_;
        xm[j] -= h_;
        Vec fp = base_->value(xp), fm = base_->value(xm);
        for (int i = 0; i < d; ++i) v[i] = (fp[i] - 2.0 * f0[i] + fm[i]) / (h_ * h_);
      } else {
        Vec xpp = x, xpm = x, xmp = x, xmm = x;
        xpp[j] += h_; xpp[k] += h_;
        xpm[j] += h_; xpm[k] -= h_;
        xmp[j] -= h_; xmp[k] += h_;
        xmm[j] -= h_; xmm[k] -= h_;
        Vec fpp = base_->value(xpp), fpm = base_->value(xpm);
        Vec fmp = base_->value(xmp), fmm = base_->value(xmm);
        for (int i = 0; i < d; ++i)
          v[i] = (fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4.0 * h_ * h_);
      }
      for (int i = 0; i < d; ++i) {
        t(i, j, k) = v[i];
        t(i, k, j) = v[i];
      }
    }
  }
  return t;
}

Ten4 FiniteDiffField::third(const Vec& x) const {
  if (order_ < 3) order_error(3);
  // central difference of the second-derivative stencil
  const int d = dim();
  Ten4 t(d);
  for (int l = 0; l < d; ++l) {
    Vec xp = x, xm = x;
    xp[l] += h_;
    xm[l] -= h_;
    Ten3 sp = second(xp), sm = second(xm);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          t(i, j, k, l) = (sp(i, j, k) - sm(i, j, k)) / (2.0 * h_);
  }
  return t;
}

// --- linear combinations ----------------------------------------------------

LinearCombField::LinearCombField(std::shared_ptr<const std::vector<FieldPtr>> basis,
                                 std::vector<double> beta)
    : basis_(std::move(basis)), beta_(std::move(beta)) {
  if (basis_->empty()) throw ConfigError("LinearCombField: empty basis");
  if (basis_->size() != beta_.size())
    throw ConfigError("LinearCombField: coefficient count mismatch");
  d_ = (*basis_)[0]->dim();
  order_ = 3;
  for (const auto& f : *basis_) order_ = std::min(order_, f->order());
}

Vec LinearCombField::value(const Vec& x) const {
  Vec r(d_);
  for (size_t k = 0; k < beta_.size(); ++k) {
    if (beta_[k] == 0.0) continue;
    Vec v = (*basis_)[k]->value(x);
    for (int i = 0; i < d_; ++i) r[i] += beta_[k] * v[i];
  }
  return r;
}

Mat LinearCombField::jacobian(const Vec& x) const {
  if (order_ < 1) order_error(1);
  Mat r(d_);
  for (size_t k = 0; k < beta_.size(); ++k) {
    if (beta_[k] == 0.0) continue;
    Mat m = (*basis_)[k]->jacobian(x);
    m *= beta_[k];
    r += m;
  }
  return r;
}

Ten3 LinearCombField::second(const Vec& x) const {
  if (order_ < 2) order_error(2);
  Ten3 r(d_);
  for (size_t k = 0; k < beta_.size(); ++k) {
    if (beta_[k] == 0.0) continue;
    Ten3 m = (*basis_)[k]->second(x);
    m *= beta_[k];
    r += m;
  }
  return r;
}

Ten4 LinearCombField::third(const Vec& x) const {
  if (order_ < 3) order_error(3);
  Ten4 r(d_);
  for (size_t k = 0; k < beta_.size(); ++k) {
    if (beta_[k] == 0.0) continue;
    Ten4 m = (*basis_)[k]->third(x);
    m *= beta_[k];
    r += m;
  }
  return r;
}

// --- pairings ---------------------------------------------------------------

Vec pairing_value(const VectorField& u, const VectorField& v, const Vec& x) {
  return v.jacobian(x).apply(u.value(x));
}

PairingField::PairingField(std::shared_ptr<const std::vector<FieldPtr>> basis,
                           std::vector<double> area_row_major)
    : basis_(std::move(basis)), area_(std::move(area_row_major)) {
  ell_ = basis_->size();
  if (ell_ == 0) throw ConfigError("PairingField: empty basis");
  if (area_.size() != ell_ * ell_)
    throw ConfigError("PairingField: area matrix size mismatch");
  d_ = (*basis_)[0]->dim();
  int base_order = 3;
  for (const auto& f : *basis_) base_order = std::min(base_order, f->order());
  order_ = std::max(0, base_order - 1);
}

Vec PairingField::value(const Vec& x) const {
  // sum_{j,k} A^{jk} (De_k)(e_j)
  Vec r(d_);
  std::vector<Vec> vals(ell_);
  std::vector<Mat> jacs(ell_);
  std::vector<char> need_val(ell_, 0), need_jac(ell_, 0);
  for (size_t j = 0; j < ell_; ++j)
    for (size_t k = 0; k < ell_; ++k)
      if (area(static_cast<int>(j), static_cast<int>(k)) != 0.0) {
        need_val[j] = 1;
        need_jac[k] = 1;
      }
  for (size_t k = 0; k < ell_; ++k) {
    if (need_val[k]) vals[k] = (*basis_)[k]->value(x);
    if (need_jac[k]) jacs[k] = (*basis_)[k]->jacobian(x);
  }
  for (size_t j = 0; j < ell_; ++j)
    for (size_t k = 0; k < ell_; ++k) {
      double a = area(static_cast<int>(j), static_cast<int>(k));
      if (a == 0.0) continue;
      Vec p = jacs[k].apply(vals[j]);
      for (int i = 0; i < d_; ++i) r[i] += a * p[i];
    }
  return r;
}

Mat PairingField::jacobian(const Vec& x) const {
  if (order_ < 1) order_error(1);
  // d_m [ (d_n e_k^i) e_j^n ] = (d_m d_n e_k^i) e_j^n + (d_n e_k^i)(d_m e_j^n)
  Mat r(d_);
  std::vector<Vec> vals(ell_);
  std::vector<Mat> jacs(ell_);
  std::vector<Ten3> secs(ell_);
  for (size_t k = 0; k < ell_; ++k) {
    vals[k] = (*basis_)[k]->value(x);
    jacs[k] = (*basis_)[k]->jacobian(x);
    secs[k] = (*basis_)[k]->second(x);
  }
  for (size_t j = 0; j < ell_; ++j)
    for (size_t k = 0; k < ell_; ++k) {
      double a = area(static_cast<int>(j), static_cast<int>(k));
      if (a == 0.0) continue;
      for (int i = 0; i < d_; ++i)
        for (int m = 0; m < d_; ++m) {
          double s = 0.0;
          for (int n = 0; n < d_; ++n)
            s += secs[k](i, m, n) * vals[j][n] + jacs[k](i, n) * jacs[j](n, m);
          r(i, m) += a * s;
        }
    }
  return r;
}

Ten3 PairingField::second(const Vec& x) const {
  if (order_ < 2) order_error(2);
  Ten3 r(d_);
  std::vector<Vec> vals(ell_);
  std::vector<Mat> jacs(ell_);
  std::vector<Ten3> secs(ell_);
  std::vector<Ten4> thirds(ell_);
  for (size_t k = 0; k < ell_; ++k) {
    vals[k] = (*basis_)[k]->value(x);
    jacs[k] = (*basis_)[k]->jacobian(x);
    secs[k] = (*basis_)[k]->second(x);
    thirds[k] = (*basis_)[k]->third(x);
  }
  for (size_t j = 0; j < ell_; ++j)
    for (size_t k = 0; k < ell_; ++k) {
      double a = area(static_cast<int>(j), static_cast<int>(k));
      if (a == 0.0) continue;
      for (int i = 0; i < d_; ++i)
        for (int l = 0; l < d_; ++l)
          for (int m = 0; m < d_; ++m) {
            double s = 0.0;
            for (int n = 0; n < d_; ++n)
              s += thirds[k](i, l, m, n) * vals[j][n] +
                   secs[k](i, m, n) * jacs[j](n, l) +
                   secs[k](i, l, n) * jacs[j](n, m) +
                   jacs[k](i, n) * secs[j](n, l, m);
            r(i, l, m) += a * s;
          }
    }
  return r;
}

Ten4 PairingField::third(const Vec&) const { order_error(3); }

}  // namespace roughflow

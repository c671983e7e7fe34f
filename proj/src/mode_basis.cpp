#include "roughflow/lift/mode_basis.hpp"

#include <cmath>

namespace roughflow {

ModeBasis::ModeBasis(std::vector<FieldPtr> fs, std::vector<double> lam, double eta_)
    : fields(std::make_shared<const std::vector<FieldPtr>>(std::move(fs))),
      lambda(std::move(lam)),
      eta(eta_) {
  if (fields->empty()) throw ConfigError("ModeBasis: need at least one field");
  if (fields->size() != lambda.size())
    throw ConfigError("ModeBasis: weight count mismatch");
  for (double l : lambda)
    if (l < 0.0) throw ConfigError("ModeBasis: weights must be nonnegative");
  for (const auto& f : *fields)
    if (f->order() < 3) throw ConfigError("ModeBasis: fields must have order >= 3");
}

namespace {

// dir * g(<w,x> + phase) with g = sin; phase pi/2 turns it into cos
class TrigField final : public VectorField {
 public:
  TrigField(Vec dir, Vec freq, double phase) : dir_(dir), w_(freq), phase_(phase) {}
  int dim() const override { return dir_.n; }
  int order() const override { return 3; }

  Vec value(const Vec& x) const override {
    double g = std::sin(theta(x));
    return g * dir_;
  }
  Mat jacobian(const Vec& x) const override {
    double g1 = std::cos(theta(x));
    Mat m(dir_.n);
    for (int i = 0; i < dir_.n; ++i)
      for (int j = 0; j < dir_.n; ++j) m(i, j) = dir_[i] * w_[j] * g1;
    return m;
  }
  Ten3 second(const Vec& x) const override {
    double g2 = -std::sin(theta(x));
    Ten3 t(dir_.n);
    for (int i = 0; i < dir_.n; ++i)
      for (int j = 0; j < dir_.n; ++j)
        for (int k = 0; k < dir_.n; ++k) t(i, j, k) = dir_[i] * w_[j] * w_[k] * g2;
    return t;
  }
  Ten4 third(const Vec& x) const override {
    double g3 = -std::cos(theta(x));
    Ten4 t(dir_.n);
    for (int i = 0; i < dir_.n; ++i)
      for (int j = 0; j < dir_.n; ++j)
        for (int k = 0; k < dir_.n; ++k)
          for (int l = 0; l < dir_.n; ++l)
            t(i, j, k, l) = dir_[i] * w_[j] * w_[k] * w_[l] * g3;
    return t;
  }

 private:
  double theta(const Vec& x) const { return dot(w_, x) + phase_; }
  Vec dir_, w_;
  double phase_;
};

// dir * exp(-|x-c|^2 / (2 sigma^2))
class BumpField final : public VectorField {
 public:
  BumpField(Vec dir, Vec center, double sigma) : dir_(dir), c_(center), s2_(sigma * sigma) {}
  int dim() const override { return dir_.n; }
  int order() const override { return 3; }

  Vec value(const Vec& x) const override { return g(x) * dir_; }
  Mat jacobian(const Vec& x) const override {
    const int d = dir_.n;
    double gv = g(x);
    Mat m(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = -dir_[i] * (x[j] - c_[j]) / s2_ * gv;
    return m;
  }
  Ten3 second(const Vec& x) const override {
    const int d = dir_.n;
    double gv = g(x);
    Ten3 t(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double jk = (j == k) ? 1.0 : 0.0;
          double u = (-jk / s2_ + (x[j] - c_[j]) * (x[k] - c_[k]) / (s2_ * s2_)) * gv;
          t(i, j, k) = dir_[i] * u;
        }
    return t;
  }
  Ten4 third(const Vec& x) const override {
    const int d = dir_.n;
    double gv = g(x);
    Ten4 t(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double xj = x[j] - c_[j], xk = x[k] - c_[k], xl = x[l] - c_[l];
            double djk = (j == k) ? 1.0 : 0.0;
            double djl = (j == l) ? 1.0 : 0.0;
            double dkl = (k == l) ? 1.0 : 0.0;
            double u = ((djk * xl + djl * xk + dkl * xj) / (s2_ * s2_) -
                        xj * xk * xl / (s2_ * s2_ * s2_)) *
                       gv;
            t(i, j, k, l) = dir_[i] * u;
          }
    return t;
  }

 private:
  double g(const Vec& x) const {
    double r2 = 0.0;
    for (int i = 0; i < x.n; ++i) r2 += (x[i] - c_[i]) * (x[i] - c_[i]);
    return std::exp(-r2 / (2.0 * s2_));
  }
  Vec dir_, c_;
  double s2_;
};

Vec axis(int d, int i) {
  Vec v(d);
  v[i] = 1.0;
  return v;
}

}  // namespace

ModeBasis make_trig_basis(const Box& box, int ell, std::vector<double> lambda) {
  const int d = box.dim();
  std::vector<FieldPtr> fields;
  // direction cycles through the axes, frequency lives on the next axis
  // (on the axis itself in d = 1) so consecutive modes do not commute
  static const int freq_table[6] = {1, 1, 2, 1, 2, 3};
  for (int k = 0; k < ell; ++k) {
    int dir_axis = k % d;
    int freq_axis = (d == 1) ? 0 : (dir_axis + 1) % d;
    int m = freq_table[k % 6] + k / 6;
    Vec w(d);
    double L = box.hi[freq_axis] - box.lo[freq_axis];
    w[freq_axis] = 2.0 * 3.14159265358979323846 * m / L;
    double phase = (k % 2 == 0) ? 0.0 : 1.5707963267948966;
    fields.push_back(std::make_shared<TrigField>(axis(d, dir_axis), w, phase));
  }
  return ModeBasis(std::move(fields), std::move(lambda));
}

ModeBasis make_bump_basis(const Box& box, int ell, std::vector<double> lambda,
                          double eta) {
  const int d = box.dim();
  std::vector<FieldPtr> fields;
  double sigma = 0.25 * (box.hi[0] - box.lo[0]);
  for (int k = 0; k < ell; ++k) {
    Vec c(d);
    for (int j = 0; j < d; ++j) {
      double frac = (k + 1.0) / (ell + 1.0);
      if (j > 0) frac = std::fmod(frac * (j + 1) * 0.61803398875, 1.0);
      c[j] = box.lo[j] + frac * (box.hi[j] - box.lo[j]);
    }
    fields.push_back(std::make_shared<BumpField>(axis(d, k % d), c, sigma));
  }
  return ModeBasis(std::move(fields), std::move(lambda), eta);
}

ModeBasis make_constant_basis(std::vector<Vec> directions, std::vector<double> lambda) {
  std::vector<FieldPtr> fields;
  for (const auto& c : directions) fields.push_back(std::make_shared<ConstantField>(c));
  return ModeBasis(std::move(fields), std::move(lambda));
}

Mat local_characteristic(const ModeBasis& basis, const Vec& x, const Vec& y) {
  const int d = basis.dim();
  Mat a(d);
  for (size_t k = 0; k < basis.count(); ++k) {
    if (basis.lambda[k] == 0.0) continue;
    Vec ex = (*basis.fields)[k]->value(x);
    Vec ey = (*basis.fields)[k]->value(y);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) += basis.lambda[k] * ex[i] * ey[j];
  }
  return a;
}

}  // namespace roughflow

#include "roughflow/core/norms.hpp"

#include <cmath>

namespace roughflow {

namespace {

void check_quotient_args(const SpaceSample& sample, double rho) {
  if (sample.pairs.empty()) throw ConfigError("hoelder_quotient: empty pair list");
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("hoelder_quotient: rho in (0,1]");
}

// Unordered multi-indices of a given total degree; entries are sorted
// coordinate indices, e.g. degree 2 in d=2 -> (0,0),(0,1),(1,1).
struct MultiIndexSet {
  std::vector<std::array<int, 3>> idx;
  static MultiIndexSet of_degree(int d, int degree) {
    MultiIndexSet s;
    if (degree == 1) {
      for (int j = 0; j < d; ++j) s.idx.push_back({j, -1, -1});
    } else if (degree == 2) {
      for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k) s.idx.push_back({j, k, -1});
    } else if (degree == 3) {
      for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k)
          for (int l = k; l < d; ++l) s.idx.push_back({j, k, l});
    }
    return s;
  }
};

// |D^a f(x)| for one multi-index: max over components.
struct DerivEval {
  const VectorField& f;
  int degree;
  Mat m;
  Ten3 t3;
  Ten4 t4;
  Vec v;

  DerivEval(const VectorField& f_, int degree_, const Vec& x) : f(f_), degree(degree_) {
    switch (degree) {
      case 0: v = f.value(x); break;
      case 1: m = f.jacobian(x); break;
      case 2: t3 = f.second(x); break;
      default: t4 = f.third(x); break;
    }
  }
  double entry(int i, const std::array<int, 3>& a) const {
    switch (degree) {
      case 0: return v[i];
      case 1: return m(i, a[0]);
      case 2: return t3(i, a[0], a[1]);
      default: return t4(i, a[0], a[1], a[2]);
    }
  }
};

double sup_over_points(const VectorField& f, const SpaceSample& sample, int degree) {
  const int d = f.dim();
  auto mis = MultiIndexSet::of_degree(d, degree);
  if (degree == 0) {
    double m = 0.0;
    for (const auto& x : sample.points) m = std::max(m, f.value(x).norm_inf());
    return m;
  }
  std::vector<double> sups(mis.idx.size(), 0.0);
  for (const auto& x : sample.points) {
    DerivEval de(f, degree, x);
    for (size_t a = 0; a < mis.idx.size(); ++a)
      for (int i = 0; i < d; ++i)
        sups[a] = std::max(sups[a], std::abs(de.entry(i, mis.idx[a])));
  }
  double total = 0.0;
  for (double s : sups) total += s;
  return total;
}

double quotient_of_degree(const VectorField& f, const SpaceSample& sample, int degree,
                          double rho) {
  const int d = f.dim();
  auto mis = MultiIndexSet::of_degree(d, degree);
  size_t na = degree == 0 ? 1 : mis.idx.size();
  std::vector<double> sups(na, 0.0);
  for (const auto& [x, y] : sample.pairs) {
    double r = std::pow(dist2(x, y), rho);
    DerivEval dx(f, degree, x), dy(f, degree, y);
    if (degree == 0) {
      double diff = 0.0;
      for (int i = 0; i < d; ++i) diff = std::max(diff, std::abs(dx.v[i] - dy.v[i]));
      sups[0] = std::max(sups[0], diff / r);
      continue;
    }
    for (size_t a = 0; a < na; ++a) {
      double diff = 0.0;
      for (int i = 0; i < d; ++i)
        diff = std::max(diff, std::abs(dx.entry(i, mis.idx[a]) - dy.entry(i, mis.idx[a])));
      sups[a] = std::max(sups[a], diff / r);
    }
  }
  double total = 0.0;
  for (double s : sups) total += s;
  return total;
}

// Difference view used by distance norms.
class DiffField final : public VectorField {
 public:
  DiffField(const VectorField& a, const VectorField& b) : a_(a), b_(b) {}
  int dim() const override { return a_.dim(); }
  int order() const override { return std::min(a_.order(), b_.order()); }
  Vec value(const Vec& x) const override { return a_.value(x) - b_.value(x); }
  Mat jacobian(const Vec& x) const override { return a_.jacobian(x) - b_.jacobian(x); }
  Ten3 second(const Vec& x) const override {
    Ten3 t = a_.second(x);
    Ten3 u = b_.second(x);
    u *= -1.0;
    t += u;
    return t;
  }
  Ten4 third(const Vec& x) const override {
    Ten4 t = a_.third(x);
    Ten4 u = b_.third(x);
    u *= -1.0;
    t += u;
    return t;
  }

 private:
  const VectorField& a_;
  const VectorField& b_;
};

}  // namespace

double hoelder_quotient(const std::function<double(const Vec&)>& f,
                        const SpaceSample& sample, double rho) {
  check_quotient_args(sample, rho);
  double m = 0.0;
  for (const auto& [x, y] : sample.pairs) {
    double r = std::pow(dist2(x, y), rho);
    m = std::max(m, std::abs(f(x) - f(y)) / r);
  }
  return m;
}

double hoelder_quotient(const VectorField& f, const SpaceSample& sample, double rho) {
  check_quotient_args(sample, rho);
  return quotient_of_degree(f, sample, 0, rho);
}

double cr_norm(const VectorField& f, const SpaceSample& sample, int order, double rho) {
  if (order < 0 || order > 3) throw ConfigError("cr_norm: order must be in 0..3");
  if (order > f.order()) throw ConfigError("cr_norm: order exceeds field's declared order");
  check_quotient_args(sample, rho);
  if (sample.points.empty()) throw ConfigError("cr_norm: empty sample");
  double total = 0.0;
  for (int m = 0; m <= std::max(order - 1, 0); ++m) total += sup_over_points(f, sample, m);
  total += quotient_of_degree(f, sample, order, rho);
  return total;
}

double holder_field_norm(const VectorField& f, const SpaceSample& sample, int n,
                         double rho) {
  if (n < 0 || n > 3) throw ConfigError("holder_field_norm: n must be in 0..3");
  if (n > f.order())
    throw ConfigError("holder_field_norm: n exceeds field's declared order");
  double total = 0.0;
  for (int m = 0; m <= n; ++m) total += sup_over_points(f, sample, m);
  if (!sample.pairs.empty()) total += quotient_of_degree(f, sample, n, rho);
  return total;
}

double holder_field_norm_diff(const VectorField& f, const VectorField& g,
                              const SpaceSample& sample, int n, double rho) {
  DiffField d(f, g);
  return holder_field_norm(d, sample, n, rho);
}

}  // namespace roughflow

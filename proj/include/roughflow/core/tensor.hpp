#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>

// Small dense vectors and derivative tensors for state spaces R^d, d <= 3.
// All value types, no heap traffic; these sit in the inner loops of the
// ODE integrator and the norm estimators.

namespace roughflow {

inline constexpr int kMaxDim = 3;

struct Vec {
  int n{0};
  std::array<double, kMaxDim> a{};

  Vec() = default;
  explicit Vec(int dim) : n(dim) { assert(dim >= 0 && dim <= kMaxDim); }
  Vec(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
    assert(n <= kMaxDim);
    int i = 0;
    for (double x : xs) a[i++] = x;
  }

  double& operator[](int i) { return a[static_cast<size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(double c) {
    for (int i = 0; i < n; ++i) a[i] *= c;
    return *this;
  }

  friend Vec operator+(Vec x, const Vec& y) { return x += y; }
  friend Vec operator-(Vec x, const Vec& y) { return x -= y; }
  friend Vec operator*(double c, Vec x) { return x *= c; }

  // max-norm on values; all field norms in the library use it
  double norm_inf() const {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
  }
  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * a[i];
    return std::sqrt(s);
  }
  friend double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int i = 0; i < x.n; ++i) s += x.a[i] * y.a[i];
    return s;
  }
};

// First derivative of a vector field: m(i,j) = d_j f^i.
struct Mat {
  int n{0};
  std::array<double, kMaxDim * kMaxDim> a{};

  Mat() = default;
  explicit Mat(int dim) : n(dim) {}
  double& operator()(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }

  Mat& operator+=(const Mat& o) {
    for (int i = 0; i < n * n; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (int i = 0; i < n * n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat& operator*=(double c) {
    for (int i = 0; i < n * n; ++i) a[i] *= c;
    return *this;
  }
  friend Mat operator-(Mat x, const Mat& y) { return x -= y; }

  // matrix acting on a vector: (Df)(v)
  Vec apply(const Vec& v) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }
  double norm_inf() const {
    double m = 0.0;
    for (int i = 0; i < n * n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
  }
};

// Second derivative: t(i,j,k) = d_j d_k f^i (symmetric in j,k for C^2 fields).
struct Ten3 {
  int n{0};
  std::array<double, kMaxDim * kMaxDim * kMaxDim> a{};

  Ten3() = default;
  explicit Ten3(int dim) : n(dim) {}
  double& operator()(int i, int j, int k) {
    return a[static_cast<size_t>((i * n + j) * n + k)];
  }
  double operator()(int i, int j, int k) const {
    return a[static_cast<size_t>((i * n + j) * n + k)];
  }
  Ten3& operator+=(const Ten3& o) {
    for (int i = 0; i < n * n * n; ++i) a[i] += o.a[i];
    return *this;
  }
  Ten3& operator*=(double c) {
    for (int i = 0; i < n * n * n; ++i) a[i] *= c;
    return *this;
  }
};

// Third derivative: t(i,j,k,l) = d_j d_k d_l f^i.
struct Ten4 {
  int n{0};
  std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> a{};

  Ten4() = default;
  explicit Ten4(int dim) : n(dim) {}
  double& operator()(int i, int j, int k, int l) {
    return a[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
  }
  double operator()(int i, int j, int k, int l) const {
    return a[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
  }
  Ten4& operator+=(const Ten4& o) {
    for (int i = 0; i < n * n * n * n; ++i) a[i] += o.a[i];
    return *this;
  }
  Ten4& operator*=(double c) {
    for (int i = 0; i < n * n * n * n; ++i) a[i] *= c;
    return *this;
  }
};

inline double dist2(const Vec& x, const Vec& y) { return (x - y).norm2(); }

}  // namespace roughflow

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "roughflow/core/errors.hpp"
#include "roughflow/core/tensor.hpp"

// Evaluable vector fields on R^d with spatial derivatives up to a declared
// order m <= 3. Querying past the declared order throws. Fields are immutable
// after construction and safe to share across workers.

namespace roughflow {

class VectorField {
 public:
  virtual ~VectorField() = default;

  virtual int dim() const = 0;
  virtual int order() const = 0;
  virtual bool analytic() const { return true; }

  virtual Vec value(const Vec& x) const = 0;
  virtual Mat jacobian(const Vec& x) const;
  virtual Ten3 second(const Vec& x) const;
  virtual Ten4 third(const Vec& x) const;

 protected:
  [[noreturn]] void order_error(int requested) const;
};

using FieldPtr = std::shared_ptr<const VectorField>;

// Scalar test functions f : R^d -> R with derivatives; the second-order part
// of a driver acts on these.
class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual int dim() const = 0;
  virtual int order() const = 0;

  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const;
  // (j,k,l) entry = d_j d_k d_l f; the leading tensor slot is reused
  virtual Ten3 third(const Vec& x) const;
};

// ---------------------------------------------------------------------------
// concrete helpers

// Zero field in dimension d (order 3, all derivatives vanish).
class ZeroField final : public VectorField {
 public:
  explicit ZeroField(int d) : d_(d) {}
  int dim() const override { return d_; }
  int order() const override { return 3; }
  Vec value(const Vec&) const override { return Vec(d_); }
  Mat jacobian(const Vec&) const override { return Mat(d_); }
  Ten3 second(const Vec&) const override { return Ten3(d_); }
  Ten4 third(const Vec&) const override { return Ten4(d_); }

 private:
  int d_;
};

// Constant field x -> c.
class ConstantField final : public VectorField {
 public:
  explicit ConstantField(Vec c) : c_(c) {}
  int dim() const override { return c_.n; }
  int order() const override { return 3; }
  Vec value(const Vec&) const override { return c_; }
  Mat jacobian(const Vec&) const override { return Mat(c_.n); }
  Ten3 second(const Vec&) const override { return Ten3(c_.n); }
  Ten4 third(const Vec&) const override { return Ten4(c_.n); }

 private:
  Vec c_;
};

// Linear field x -> M x.
class LinearMapField final : public VectorField {
 public:
  explicit LinearMapField(Mat m) : m_(m) {}
  int dim() const override { return m_.n; }
  int order() const override { return 3; }
  Vec value(const Vec& x) const override { return m_.apply(x); }
  Mat jacobian(const Vec&) const override { return m_; }
  Ten3 second(const Vec&) const override { return Ten3(m_.n); }
  Ten4 third(const Vec&) const override { return Ten4(m_.n); }

 private:
  Mat m_;
};

// Field defined by callbacks; unset derivative slots cap the declared order.
class CallbackField final : public VectorField {
 public:
  CallbackField(int d, std::function<Vec(const Vec&)> f0,
                std::function<Mat(const Vec&)> f1 = nullptr,
                std::function<Ten3(const Vec&)> f2 = nullptr,
                std::function<Ten4(const Vec&)> f3 = nullptr)
      : d_(d), f0_(std::move(f0)), f1_(std::move(f1)), f2_(std::move(f2)),
        f3_(std::move(f3)) {
    order_ = f1_ ? (f2_ ? (f3_ ? 3 : 2) : 1) : 0;
  }
  int dim() const override { return d_; }
  int order() const override { return order_; }
  Vec value(const Vec& x) const override { return f0_(x); }
  Mat jacobian(const Vec& x) const override {
    if (!f1_) order_error(1);
    return f1_(x);
  }
  Ten3 second(const Vec& x) const override {
    if (!f2_) order_error(2);
    return f2_(x);
  }
  Ten4 third(const Vec& x) const override {
    if (!f3_) order_error(3);
    return f3_(x);
  }

 private:
  int d_;
  int order_;
  std::function<Vec(const Vec&)> f0_;
  std::function<Mat(const Vec&)> f1_;
  std::function<Ten3(const Vec&)> f2_;
  std::function<Ten4(const Vec&)> f3_;
};

// Central-difference derivatives for fields that only provide values.
// Error is O(h_fd^2) on smooth fields.
class FiniteDiffField final : public VectorField {
 public:
  FiniteDiffField(FieldPtr base, double h_fd = 1e-4, int declared_order = 2)
      : base_(std::move(base)), h_(h_fd), order_(declared_order) {}
  int dim() const override { return base_->dim(); }
  int order() const override { return order_; }
  bool analytic() const override { return false; }
  Vec value(const Vec& x) const override { return base_->value(x); }
  Mat jacobian(const Vec& x) const override;
  Ten3 second(const Vec& x) const override;
  Ten4 third(const Vec& x) const override;

 private:
  FieldPtr base_;
  double h_;
  int order_;
};

// sum_k beta_k e_k over a shared list of basis fields
class LinearCombField final : public VectorField {
 public:
  LinearCombField(std::shared_ptr<const std::vector<FieldPtr>> basis,
                  std::vector<double> beta);
  int dim() const override { return d_; }
  int order() const override { return order_; }
  Vec value(const Vec& x) const override;
  Mat jacobian(const Vec& x) const override;
  Ten3 second(const Vec& x) const override;
  Ten4 third(const Vec& x) const override;

 private:
  std::shared_ptr<const std::vector<FieldPtr>> basis_;
  std::vector<double> beta_;
  int d_;
  int order_;
};

// Directional-derivative pairing of two fields: (u.v) := (Dv)(u).
// The commutator [u,v] = (u.v) - (v.u) is again a vector field.
Vec pairing_value(const VectorField& u, const VectorField& v, const Vec& x);

// sum_{j,k} A(j,k) (e_j L e_k) with (e_j L e_k) = (De_k)(e_j); this is the
// second-level vector field of lifted drivers, with A the (antisymmetric)
// area matrix. Derivatives are taken through the basis fields, so the
// returned field is analytic whenever the basis is.
class PairingField final : public VectorField {
 public:
  PairingField(std::shared_ptr<const std::vector<FieldPtr>> basis,
               std::vector<double> area_row_major);
  int dim() const override { return d_; }
  int order() const override { return order_; }
  Vec value(const Vec& x) const override;
  Mat jacobian(const Vec& x) const override;
  Ten3 second(const Vec& x) const override;
  Ten4 third(const Vec& x) const override;

 private:
  double area(int j, int k) const { return area_[static_cast<size_t>(j) * ell_ + k]; }
  std::shared_ptr<const std::vector<FieldPtr>> basis_;
  std::vector<double> area_;
  size_t ell_;
  int d_;
  int order_;
};

// Pointwise sum of two fields (used for V + W right-hand sides).
class SumField final : public VectorField {
 public:
  SumField(FieldPtr a, FieldPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  int dim() const override { return a_->dim(); }
  int order() const override { return std::min(a_->order(), b_->order()); }
  bool analytic() const override { return a_->analytic() && b_->analytic(); }
  Vec value(const Vec& x) const override { return a_->value(x) + b_->value(x); }
  Mat jacobian(const Vec& x) const override {
    Mat m = a_->jacobian(x);
    m += b_->jacobian(x);
    return m;
  }
  Ten3 second(const Vec& x) const override {
    Ten3 t = a_->second(x);
    t += b_->second(x);
    return t;
  }
  Ten4 third(const Vec& x) const override {
    Ten4 t = a_->third(x);
    t += b_->third(x);
    return t;
  }

 private:
  FieldPtr a_, b_;
};

// Scaled view c * f.
class ScaledField final : public VectorField {
 public:
  ScaledField(FieldPtr f, double c) : f_(std::move(f)), c_(c) {}
  int dim() const override { return f_->dim(); }
  int order() const override { return f_->order(); }
  bool analytic() const override { return f_->analytic(); }
  Vec value(const Vec& x) const override { return c_ * f_->value(x); }
  Mat jacobian(const Vec& x) const override {
    Mat m = f_->jacobian(x);
    m *= c_;
    return m;
  }
  Ten3 second(const Vec& x) const override {
    Ten3 t = f_->second(x);
    t *= c_;
    return t;
  }
  Ten4 third(const Vec& x) const override {
    Ten4 t = f_->third(x);
    t *= c_;
    return t;
  }

 private:
  FieldPtr f_;
  double c_;
};

// Scalar field from callbacks, for driver and sewing test functions.
class CallbackScalarField final : public ScalarField {
 public:
  CallbackScalarField(int d, std::function<double(const Vec&)> f0,
                      std::function<Vec(const Vec&)> f1,
                      std::function<Mat(const Vec&)> f2 = nullptr,
                      std::function<Ten3(const Vec&)> f3 = nullptr)
      : d_(d), f0_(std::move(f0)), f1_(std::move(f1)), f2_(std::move(f2)),
        f3_(std::move(f3)) {
    order_ = f2_ ? (f3_ ? 3 : 2) : 1;
  }
  int dim() const override { return d_; }
  int order() const override { return order_; }
  double value(const Vec& x) const override { return f0_(x); }
  Vec gradient(const Vec& x) const override { return f1_(x); }
  Mat hessian(const Vec& x) const override;
  Ten3 third(const Vec& x) const override;

 private:
  int d_;
  int order_;
  std::function<double(const Vec&)> f0_;
  std::function<Vec(const Vec&)> f1_;
  std::function<Mat(const Vec&)> f2_;
  std::function<Ten3(const Vec&)> f3_;
};

}  // namespace roughflow

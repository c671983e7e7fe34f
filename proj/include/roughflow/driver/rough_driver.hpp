#pragma once

#include <memory>

#include "roughflow/core/field.hpp"
#include "roughflow/core/params.hpp"
#include "roughflow/core/time.hpp"

// A rough driver is the time-indexed pair (V_ts, W_ts): a first-level vector
// field, additive in time, and the vector-field part of the second level,
//   VV_ts = W_ts + (1/2) V_ts V_ts,
// tied together by the Chen relation
//   W_ts - W_tu - W_us = (1/2) [V_us, V_tu].
// Drivers are immutable; all evaluations are pure.

namespace roughflow {

class RoughDriver;
using DriverPtr = std::shared_ptr<const RoughDriver>;

class RoughDriver {
 public:
  virtual ~RoughDriver() = default;

  virtual const DriverParams& params() const = 0;
  virtual double horizon() const = 0;
  virtual int dim() const = 0;

  // field views of V_ts (order >= 2 within the sampled-norm contract) and W_ts
  virtual FieldPtr v_field(double s, double t) const = 0;
  virtual FieldPtr w_field(double s, double t) const = 0;

  // grid-restricted drivers reject off-grid queries instead of interpolating;
  // interpolating the second level would break Chen
  virtual bool queryable(double s, double t) const {
    return 0.0 <= s && s <= t && t <= horizon() + 1e-12;
  }
  virtual const TimeGrid* time_grid() const { return nullptr; }

  Vec v_at(double s, double t, const Vec& x) const { return v_field(s, t)->value(x); }
  Vec w_at(double s, double t, const Vec& x) const { return w_field(s, t)->value(x); }
};

// --- simple drivers ----------------------------------------------------------

// V = W = 0.
class ZeroDriver final : public RoughDriver {
 public:
  ZeroDriver(int d, double T, DriverParams params = {})
      : d_(d), horizon_(T), params_(params), zero_(std::make_shared<ZeroField>(d)) {}
  const DriverParams& params() const override { return params_; }
  double horizon() const override { return horizon_; }
  int dim() const override { return d_; }
  FieldPtr v_field(double, double) const override { return zero_; }
  FieldPtr w_field(double, double) const override { return zero_; }

 private:
  int d_;
  double horizon_;
  DriverParams params_;
  FieldPtr zero_;
};

// V_ts = (t-s) c for a constant vector c; W = 0. The associated flow is the
// translation flow x + (t-s) c.
class ConstantDriver final : public RoughDriver {
 public:
  ConstantDriver(Vec c, double T, DriverParams params = {})
      : c_(c), horizon_(T), params_(params), zero_(std::make_shared<ZeroField>(c.n)) {}
  const DriverParams& params() const override { return params_; }
  double horizon() const override { return horizon_; }
  int dim() const override { return c_.n; }
  FieldPtr v_field(double s, double t) const override {
    return std::make_shared<ConstantField>((t - s) * c_);
  }
  FieldPtr w_field(double, double) const override { return zero_; }

 private:
  Vec c_;
  double horizon_;
  DriverParams params_;
  FieldPtr zero_;
};

// Driver built from callbacks (s,t) -> field; the caller is responsible for
// additivity of V and the Chen relation of W.
class ProgrammaticDriver final : public RoughDriver {
 public:
  using FieldFn = std::function<FieldPtr(double, double)>;
  ProgrammaticDriver(int d, double T, DriverParams params, FieldFn v, FieldFn w)
      : d_(d), horizon_(T), params_(params), v_(std::move(v)), w_(std::move(w)) {}
  const DriverParams& params() const override { return params_; }
  double horizon() const override { return horizon_; }
  int dim() const override { return d_; }
  FieldPtr v_field(double s, double t) const override { return v_(s, t); }
  FieldPtr w_field(double s, double t) const override { return w_(s, t); }

 private:
  int d_;
  double horizon_;
  DriverParams params_;
  FieldFn v_, w_;
};

// --- structural transforms ---------------------------------------------------

// Time reversal from time a: V^a_ts = V_{a-s,a-t}, W^a_ts = -W_{a-s,a-t}.
// Chen is preserved; the reversal is an involution and keeps the norm.
DriverPtr time_reverse(DriverPtr drv, double a);

// Dilation (V, W) -> (eps V, eps^2 W). Both sides of Chen scale by eps^2,
// and the homogeneous metric is 1-homogeneous under simultaneous dilation.
DriverPtr dilate(DriverPtr drv, double eps);

// Same driver with the second level forced to zero (test probe).
DriverPtr with_zero_w(DriverPtr drv);

}  // namespace roughflow

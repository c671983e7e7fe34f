#include "roughflow/driver/rough_driver.hpp"

namespace roughflow {

namespace {

class ReversedDriver final : public RoughDriver {
 public:
  ReversedDriver(DriverPtr base, double a) : base_(std::move(base)), a_(a) {
    if (!(a_ > 0.0 && a_ <= base_->horizon() + 1e-12))
      throw ConfigError("time_reverse: a must lie in (0, T]");
    if (const TimeGrid* g = base_->time_grid()) {
      int m = g->index_of(a_);
      grid_ = TimeGrid(a_, m);
      has_grid_ = true;
    }
  }
  const DriverParams& params() const override { return base_->params(); }
  double horizon() const override { return a_; }
  int dim() const override { return base_->dim(); }
  // V^a_ts is the increment of the reversed path, i.e. the negated base
  // increment over the reflected cell; the inverse-flow ODE integrates
  // -V - W, which is exactly V^a + W^a over the reflected cell.
  FieldPtr v_field(double s, double t) const override {
    return std::make_shared<ScaledField>(base_->v_field(a_ - t, a_ - s), -1.0);
  }
  FieldPtr w_field(double s, double t) const override {
    return std::make_shared<ScaledField>(base_->w_field(a_ - t, a_ - s), -1.0);
  }
  bool queryable(double s, double t) const override {
    return s <= t && base_->queryable(a_ - t, a_ - s);
  }
  const TimeGrid* time_grid() const override { return has_grid_ ? &grid_ : nullptr; }

  DriverPtr base() const { return base_; }
  double a() const { return a_; }

 private:
  DriverPtr base_;
  double a_;
  TimeGrid grid_;
  bool has_grid_{false};
};

class DilatedDriver final : public RoughDriver {
 public:
  DilatedDriver(DriverPtr base, double eps) : base_(std::move(base)), eps_(eps) {
    if (!(eps_ > 0.0)) throw ConfigError("dilate: eps must be positive");
  }
  const DriverParams& params() const override { return base_->params(); }
  double horizon() const override { return base_->horizon(); }
  int dim() const override { return base_->dim(); }
  FieldPtr v_field(double s, double t) const override {
    return std::make_shared<ScaledField>(base_->v_field(s, t), eps_);
  }
  FieldPtr w_field(double s, double t) const override {
    return std::make_shared<ScaledField>(base_->w_field(s, t), eps_ * eps_);
  }
  bool queryable(double s, double t) const override { return base_->queryable(s, t); }
  const TimeGrid* time_grid() const override { return base_->time_grid(); }

  DriverPtr base() const { return base_; }
  double eps() const { return eps_; }

 private:
  DriverPtr base_;
  double eps_;
};

class ZeroWDriver final : public RoughDriver {
 public:
  explicit ZeroWDriver(DriverPtr base)
      : base_(std::move(base)), zero_(std::make_shared<ZeroField>(base_->dim())) {}
  const DriverParams& params() const override { return base_->params(); }
  double horizon() const override { return base_->horizon(); }
  int dim() const override { return base_->dim(); }
  FieldPtr v_field(double s, double t) const override { return base_->v_field(s, t); }
  FieldPtr w_field(double, double) const override { return zero_; }
  bool queryable(double s, double t) const override { return base_->queryable(s, t); }
  const TimeGrid* time_grid() const override { return base_->time_grid(); }

 private:
  DriverPtr base_;
  FieldPtr zero_;
};

}  // namespace

DriverPtr time_reverse(DriverPtr drv, double a) {
  // reversing twice from the same endpoint gives back the original object
  if (auto rev = std::dynamic_pointer_cast<const ReversedDriver>(drv))
    if (rev->a() == a && a == rev->base()->horizon()) return rev->base();
  return std::make_shared<ReversedDriver>(std::move(drv), a);
}

DriverPtr dilate(DriverPtr drv, double eps) {
  if (auto dil = std::dynamic_pointer_cast<const DilatedDriver>(drv))
    return std::make_shared<DilatedDriver>(dil->base(), dil->eps() * eps);
  return std::make_shared<DilatedDriver>(std::move(drv), eps);
}

DriverPtr with_zero_w(DriverPtr drv) {
  return std::make_shared<ZeroWDriver>(std::move(drv));
}

}  // namespace roughflow

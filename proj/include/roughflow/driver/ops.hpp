#pragma once

#include "roughflow/core/space_sample.hpp"
#include "roughflow/driver/rough_driver.hpp"

namespace roughflow {

// (VV_ts f)(x) = (W_ts f)(x) + (1/2)(V_ts (V_ts f))(x), with vector fields
// acting as first-order operators. Needs f twice differentiable.
double second_level_apply(const RoughDriver& drv, double s, double t,
                          const ScalarField& f, const Vec& x);

// action of a vector field on a scalar function, (V f)(x) = <V(x), grad f(x)>
double apply_field(const VectorField& v, const ScalarField& f, const Vec& x);

// sup over the sample of |V_ts - V_tu - V_us|.
double additivity_defect(const RoughDriver& drv, double s, double u, double t,
                         const SpaceSample& sample);

// sup over the sample of |W_ts - W_tu - W_us - (1/2)((V_us.V_tu) - (V_tu.V_us))|.
double chen_defect(const RoughDriver& drv, double s, double u, double t,
                   const SpaceSample& sample);

// Derivation proxy for the first-order character of W: compares the
// finite-difference directional derivative of the product fg along W
// against f W(g) + g W(f); the defect is O(eps^2) for genuine vector fields.
double leibniz_defect(const RoughDriver& drv, double s, double t,
                      const SpaceSample& sample, const ScalarField& f,
                      const ScalarField& g, double eps = 1e-5);

}  // namespace roughflow

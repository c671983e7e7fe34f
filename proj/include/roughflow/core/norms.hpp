#pragma once

#include <functional>

#include "roughflow/core/field.hpp"
#include "roughflow/core/space_sample.hpp"

// Empirical Hoelder-norm machinery. Every norm here is a sample norm: sups
// run over the sample's points, quotients over its pair list. Sample norms
// lower-bound the true norms and are monotone under sample enlargement.

namespace roughflow {

// max over pairs of |f(x)-f(y)| / |x-y|^rho
double hoelder_quotient(const std::function<double(const Vec&)>& f,
                        const SpaceSample& sample, double rho);
double hoelder_quotient(const VectorField& f, const SpaceSample& sample, double rho);

// Sups of f and its derivatives below `order` plus the rho-quotient of the
// order-th derivatives.
double cr_norm(const VectorField& f, const SpaceSample& sample, int order, double rho);

// Full C^{n+rho} sample norm: sup |f| + sum_{1<=|a|<=n} sup |D^a f| plus the
// rho-quotients of the top derivatives; this is the norm entering driver
// rates and distances.
double holder_field_norm(const VectorField& f, const SpaceSample& sample, int n,
                         double rho);

// Same norm for the difference f - g without materializing it.
double holder_field_norm_diff(const VectorField& f, const VectorField& g,
                              const SpaceSample& sample, int n, double rho);

}  // namespace roughflow

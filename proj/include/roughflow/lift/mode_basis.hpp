#pragma once

#include <memory>
#include <vector>

#include "roughflow/core/field.hpp"
#include "roughflow/core/space_sample.hpp"

namespace roughflow {

// Finite family of smooth basis fields e_1..e_ell with eigenweights
// lambda_k >= 0, representing a velocity field M_t = sum_k B^k_t e_k with
// local characteristic a(x,y) = sum_k lambda_k e_k(x) (x) e_k(y).
// eta records the envelope decay of the fields (|e_k| <= kappa/(1+|x|^eta)).
struct ModeBasis {
  std::shared_ptr<const std::vector<FieldPtr>> fields;
  std::vector<double> lambda;
  double eta{0.0};

  ModeBasis() = default;
  ModeBasis(std::vector<FieldPtr> fs, std::vector<double> lam, double eta_ = 0.0);

  size_t count() const { return fields ? fields->size() : 0; }
  int dim() const { return count() ? (*fields)[0]->dim() : 0; }
};

// Trigonometric fields on the torus box: e_k = dir_k * trig(<w_k, x> + phase).
// Frequencies and directions cycle through a fixed table; derivatives to
// order 3 are closed-form.
ModeBasis make_trig_basis(const Box& box, int ell, std::vector<double> lambda);

// Gaussian-bump fields centered in the box, width sigma = box width / 4;
// closed-form derivatives to order 3, envelope parameter eta recorded.
ModeBasis make_bump_basis(const Box& box, int ell, std::vector<double> lambda,
                          double eta);

// Constant fields (commuting family; every lifted W vanishes).
ModeBasis make_constant_basis(std::vector<Vec> directions, std::vector<double> lambda);

// a(x,y) = sum_k lambda_k e_k(x) (x) e_k(y); symmetric nonneg-definite on
// the diagonal.
Mat local_characteristic(const ModeBasis& basis, const Vec& x, const Vec& y);

}  // namespace roughflow

#pragma once

#include <string>
#include <vector>

namespace roughflow {

enum class TailVerdict { gaussian, not_gaussian, degenerate, insufficient };

std::string to_string(TailVerdict v);

// Upper-decile diagnostic for Gaussian tails: fits log of the empirical
// survival function against x^2 (Gaussian model, log P ~ -x^2/c) and against
// x (exponential model) and compares the residuals. Diagnostic only, never
// a tight acceptance gate.
struct TailFit {
  double c{0.0};   // fitted tail coefficient, positive when verdict is gaussian
  double r2{0.0};  // goodness of the quadratic survival fit
  TailVerdict verdict{TailVerdict::insufficient};

  static TailFit fit(std::vector<double> sample, int min_n = 100);
};

}  // namespace roughflow

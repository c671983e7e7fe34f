#include "roughflow/stochastic/tail.hpp"

#include <algorithm>
#include <cmath>

namespace roughflow {

std::string to_string(TailVerdict v) {
  switch (v) {
    case TailVerdict::gaussian: return "gaussian";
    case TailVerdict::not_gaussian: return "not_gaussian";
    case TailVerdict::degenerate: return "degenerate";
    default: return "insufficient";
  }
}

namespace {

struct LineFit {
  double slope{0.0};
  double sse{0.0};
  double r2{0.0};
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return f;
  f.slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - f.slope * sx) / n;
  double ss_tot = 0.0, mean_y = sy / n;
  for (size_t i = 0; i < x.size(); ++i) {
    double resid = y[i] - (intercept + f.slope * x[i]);
    f.sse += resid * resid;
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  f.r2 = ss_tot > 0 ? 1.0 - f.sse / ss_tot : 0.0;
  return f;
}

}  // namespace

TailFit TailFit::fit(std::vector<double> sample, int min_n) {
  TailFit out;
  if (static_cast<int>(sample.size()) < min_n) {
    out.verdict = TailVerdict::insufficient;
    return out;
  }
  std::sort(sample.begin(), sample.end());
  const size_t n = sample.size();

  double mean = 0.0;
  for (double v : sample) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : sample) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  if (std::sqrt(var) <= 1e-12 * (1.0 + std::abs(mean))) {
    out.verdict = TailVerdict::degenerate;
    return out;
  }

  // upper decile, excluding the largest point where survival is 0
  size_t start = n - std::max<size_t>(n / 10, 8);
  std::vector<double> xs, x2s, logs;
  for (size_t i = start; i + 1 < n; ++i) {
    double surv = static_cast<double>(n - 1 - i) / static_cast<double>(n);
    xs.push_back(sample[i]);
    x2s.push_back(sample[i] * sample[i]);
    logs.push_back(std::log(surv));
  }
  if (xs.size() < 5) {
    out.verdict = TailVerdict::insufficient;
    return out;
  }

  LineFit quad = least_squares(x2s, logs);  // log S ~ a - x^2/c
  LineFit lin = least_squares(xs, logs);    // log S ~ a - b x
  out.r2 = quad.r2;
  if (quad.slope < 0.0) out.c = -1.0 / quad.slope;
  bool gaussian = quad.slope < 0.0 && quad.sse <= lin.sse;
  out.verdict = gaussian ? TailVerdict::gaussian : TailVerdict::not_gaussian;
  return out;
}

}  // namespace roughflow

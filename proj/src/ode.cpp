#include "kinex/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kinex/error.hpp"

namespace kinex {

double OdeSolution::operator()(double t) const { return predict(a, b, k, t); }

OdeSolution OdeSolution::through(double w0, double w1, double k) {
  if (k == 0.0) return {w0, 0.0, 0.0};
  const double b = (w0 - w1) / (1.0 - std::exp(-k));
  return {w0 - b, b, k};
}

GeneralParams map_random_saving(double lambda_i, double lambda_j, double eps) {
  if (!(lambda_i >= 0.0 && lambda_i < 1.0) || !(lambda_j >= 0.0 && lambda_j < 1.0)) {
    fail(ErrorCode::InvalidParameter, "saving propensities must lie in [0,1)");
  }
  if (!(eps >= 0.0 && eps <= 1.0)) fail(ErrorCode::InvalidParameter, "epsilon must lie in [0,1]");
  return {lambda_i + eps * (1.0 - lambda_i), eps * (1.0 - lambda_j)};
}

double decay_rate(GeneralParams p) { return 1.0 + p.eps2 - p.eps1; }

double predict(double a, double b, double k, double t) { return a + b * std::exp(-k * t); }

bool k_positive_for_half(Interval w) {
  if (!(w.lo >= 0.0 && w.hi <= 1.0 && w.lo <= w.hi)) {
    fail(ErrorCode::InvalidParameter, "lambda window must lie inside [0,1]");
  }
  // Both propensities stay strictly below w.hi, so k > 1 - w.hi >= 0.
  return 1.0 - w.hi >= 0.0;
}

KPositivityCheck sample_k_positivity(Interval w, std::size_t samples, RngStream& rng) {
  k_positive_for_half(w);
  KPositivityCheck check;
  check.samples = samples;
  check.min_k = std::numeric_limits<double>::infinity();
  check.max_k = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const double li = w.lo == w.hi ? w.lo : rng.uniform(w.lo, w.hi);
    const double lj = w.lo == w.hi ? w.lo : rng.uniform(w.lo, w.hi);
    const double k = decay_rate(map_random_saving(li, lj, 0.5));
    if (!(k > 0.0)) ++check.violations;
    check.min_k = std::min(check.min_k, k);
    check.max_k = std::max(check.max_k, k);
  }
  return check;
}

}  // namespace kinex

#pragma once

#include <cstddef>

#include "kinex/rng.hpp"
#include "kinex/specs.hpp"

namespace kinex {

/// Coefficients of the general linear exchange w_i' = eps1 w_i + eps2 w_j.
struct GeneralParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

/// w(t) = a + b exp(-k t).
struct OdeSolution {
  double a = 0.0;
  double b = 0.0;
  double k = 0.0;

  double operator()(double t) const;

  /// Fixes (a, b) for a given k from the values at t = 0 and t = 1.
  static OdeSolution through(double w0, double w1, double k);
};

/// eps1 = lambda_i + eps (1 - lambda_i), eps2 = eps (1 - lambda_j).
GeneralParams map_random_saving(double lambda_i, double lambda_j, double eps);

/// k = 1 + eps2 - eps1.
double decay_rate(GeneralParams p);

double predict(double a, double b, double k, double t);

/// True when 1 - (lambda_i + lambda_j)/2 > 0 for every pair drawn from the
/// half-open window, i.e. 1 - window.hi >= 0. Throws InvalidParameter for a
/// window outside [0, 1].
bool k_positive_for_half(Interval lambda_window);

struct KPositivityCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;  // pairs with k <= 0
  double min_k = 0.0;
  double max_k = 0.0;

  bool holds() const noexcept { return violations == 0; }
};

/// Samples lambda pairs from the window and evaluates k through
/// decay_rate(map_random_saving(., ., 1/2)).
KPositivityCheck sample_k_positivity(Interval lambda_window, std::size_t samples,
                                     RngStream& rng);

}  // namespace kinex

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "kinex/relaxation.hpp"

namespace kinex {

enum class FitForm { ShiftedApproach, PureDecay };

std::string to_string(FitForm form);

/// Inclusive range of time-step labels [lo, hi].
struct FitWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool operator==(const FitWindow&) const = default;
};

/// Straight-line fit of ln|X - x0| (shifted) or ln X (pure) against t.
///
/// Shifted fits describe X(t) = x0 - amplitude * exp(-t / tau): amplitude is
/// positive when the series approaches x0 from below and negative when it
/// approaches from above. Pure fits describe X(t) = amplitude * exp(-t / tau)
/// and report x0 = 0.
struct ExpFitResult {
  double x0 = 0.0;
  double amplitude = 0.0;
  double tau = 0.0;
  FitWindow window;
  double r_squared = 0.0;
  FitForm form = FitForm::PureDecay;

  double slope = 0.0;
  double slope_stderr = 0.0;
  double tau_stderr = 0.0;  // first-order propagation of slope_stderr
  std::size_t points = 0;
};

/// Errors: InvalidParameter (window outside the series), InsufficientData
/// (< 8 points), WindowContainsCrossing, NotDecaying.
ExpFitResult fit_shifted(const RelaxationSeries& series, FitWindow window, double x0);

/// Errors: InvalidParameter, InsufficientData, LogDomainError, NotDecaying.
ExpFitResult fit_pure(const RelaxationSeries& series, FitWindow window);

/// Longest window starting at t = 2 over which |X - x0| stays above three
/// standard deviations of the series tail. Throws NoDecayWindow when fewer
/// than 8 samples qualify and InsufficientData for series shorter than 20.
FitWindow auto_window(const RelaxationSeries& series, double x0,
                      double tail_fraction = 0.25);

inline constexpr std::size_t kMinFitPoints = 8;

}  // namespace kinex

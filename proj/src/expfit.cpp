#include "kinex/expfit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kinex/error.hpp"

namespace kinex {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double e = y[k] - (fit.intercept + fit.slope * x[k]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.slope_stderr = x.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  return fit;
}

// Indices of samples whose t falls in the window.
std::pair<std::size_t, std::size_t> window_range(const RelaxationSeries& s, FitWindow w) {
  if (s.t.size() != s.x_mean.size()) fail(ErrorCode::ShapeError, "t and x_mean lengths differ");
  if (s.t.empty() || w.lo >= w.hi || w.lo < s.t.front() || w.hi > s.t.back()) {
    fail(ErrorCode::InvalidParameter, "fit window [" + std::to_string(w.lo) + ", " +
                                          std::to_string(w.hi) + "] is not inside the series");
  }
  std::size_t first = 0;
  while (first < s.t.size() && s.t[first] < w.lo) ++first;
  std::size_t last = first;
  while (last < s.t.size() && s.t[last] <= w.hi) ++last;
  if (last - first < kMinFitPoints) {
    fail(ErrorCode::InsufficientData,
         "fit window holds " + std::to_string(last - first) + " points, need " +
             std::to_string(kMinFitPoints));
  }
  return {first, last};
}

ExpFitResult finish(FitForm form, FitWindow window, double x0, double sign,
                    const std::vector<double>& t, const std::vector<double>& log_y) {
  const LineFit line = least_squares(t, log_y);
  const double span = static_cast<double>(window.hi - window.lo);
  if (!(line.slope < 0.0) || std::abs(line.slope) * span < 1e-12) {
    fail(ErrorCode::NotDecaying, "fitted log-slope " + std::to_string(line.slope) +
                                     " shows no decay");
  }
  ExpFitResult r;
  r.form = form;
  r.window = window;
  r.x0 = x0;
  r.slope = line.slope;
  r.slope_stderr = line.slope_stderr;
  r.tau = -1.0 / line.slope;
  r.tau_stderr = line.slope_stderr / (line.slope * line.slope);
  r.amplitude = sign * std::exp(line.intercept);
  r.r_squared = line.r_squared;
  r.points = t.size();
  return r;
}

}  // namespace

std::string to_string(FitForm form) {
  return form == FitForm::ShiftedApproach ? "shifted" : "pure";
}

ExpFitResult fit_shifted(const RelaxationSeries& series, FitWindow window, double x0) {
  const auto [first, last] = window_range(series, window);
  bool below = false, above = false;
  std::vector<double> t, log_y;
  for (std::size_t k = first; k < last; ++k) {
    const double gap = x0 - series.x_mean[k];
    if (!(std::abs(gap) > 0.0)) {
      fail(ErrorCode::WindowContainsCrossing,
           "series touches x0 at t = " + std::to_string(series.t[k]));
    }
    (gap > 0.0 ? below : above) = true;
    t.push_back(static_cast<double>(series.t[k]));
    log_y.push_back(std::log(std::abs(gap)));
  }
  if (below && above) {
    fail(ErrorCode::WindowContainsCrossing, "series crosses x0 inside the window");
  }
  return finish(FitForm::ShiftedApproach, window, x0, below ? 1.0 : -1.0, t, log_y);
}

ExpFitResult fit_pure(const RelaxationSeries& series, FitWindow window) {
  const auto [first, last] = window_range(series, window);
  std::vector<double> t, log_y;
  for (std::size_t k = first; k < last; ++k) {
    const double x = series.x_mean[k];
    if (!(x > 0.0)) {
      fail(ErrorCode::LogDomainError,
           "non-positive value at t = " + std::to_string(series.t[k]));
    }
    t.push_back(static_cast<double>(series.t[k]));
    log_y.push_back(std::log(x));
  }
  return finish(FitForm::PureDecay, window, 0.0, 1.0, t, log_y);
}

FitWindow auto_window(const RelaxationSeries& series, double x0, double tail_fraction) {
  const std::size_t n = series.size();
  if (n < 20) fail(ErrorCode::InsufficientData, "auto window needs at least 20 samples");
  const double threshold = 3.0 * equilibrium_tail(series, tail_fraction).stddev;

  std::size_t start = 0;
  while (start < n && series.t[start] < 2) ++start;
  std::size_t end = start;
  while (end < n && std::abs(series.x_mean[end] - x0) > threshold) ++end;
  if (end - start < kMinFitPoints) {
    fail(ErrorCode::NoDecayWindow, "only " + std::to_string(end - start) +
                                       " leading samples stand out from the tail noise");
  }
  return {series.t[start], series.t[end - 1]};
}

}  // namespace kinex

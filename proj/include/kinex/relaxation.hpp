#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "kinex/specs.hpp"

namespace kinex {

/// What produced a series: an exchange model, a resistor network, or nothing
/// recorded (synthetic or loaded from a file).
using SeriesSource = std::variant<std::monostate, ModelSpec, RrnSpec>;

/// Configuration-averaged X(t). t counts time steps from 1; for exchange
/// models one step is N interactions, for resistor networks one sweep.
struct RelaxationSeries {
  std::vector<std::int64_t> t;
  std::vector<double> x_mean;
  std::size_t n_configs = 0;
  std::size_t n_agents = 0;  // agents, or interior nodes for a network
  std::uint64_t master_seed = 0;
  SeriesSource source;

  std::size_t size() const noexcept { return x_mean.size(); }

  /// Series with t = 1..x.size() and no provenance.
  static RelaxationSeries from_values(std::vector<double> x);
};

/// (1/N) sum_i |curr_i - prev_i|. Throws ShapeError on length mismatch or
/// empty input.
double compute_x(std::span<const double> prev, std::span<const double> curr);

/// Mean X(t) over n_configs independent configurations; configuration c uses
/// RngStream(master_seed, c). Bit-identical for any thread count.
RelaxationSeries run_relaxation(const ModelSpec& spec, std::size_t n_agents,
                                std::size_t t_max, std::size_t n_configs,
                                std::uint64_t master_seed, unsigned threads = 0);

struct TailStats {
  double mean = 0.0;
  double stddev = 0.0;     // sample standard deviation (n - 1)
  double std_error = 0.0;  // stddev / sqrt(count)
  std::size_t count = 0;
};

/// Statistics of the trailing tail_fraction of x_mean.
/// Requires 0 < tail_fraction <= 0.5 and at least 10 samples.
TailStats equilibrium_tail(const RelaxationSeries& series, double tail_fraction = 0.25);

/// The X0 estimator: mean of the trailing tail_fraction of x_mean.
double equilibrium_window_mean(const RelaxationSeries& series,
                               double tail_fraction = 0.25);

}  // namespace kinex

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kinex/specs.hpp"

namespace kinex {

/// Wealth pooled over configurations after an equilibration period.
struct EquilibriumSample {
  std::vector<double> wealth;             // every agent at every snapshot
  std::vector<double> agent_lambda;       // one entry per (config, agent)
  std::vector<double> agent_mean_wealth;  // time average over the snapshots
};

/// Runs each configuration for `equilibration` steps, then records
/// `n_snapshots` snapshots spaced `interval` steps apart.
EquilibriumSample sample_equilibrium(const ModelSpec& spec, std::size_t n_agents,
                                     std::size_t equilibration,
                                     std::size_t n_snapshots, std::size_t interval,
                                     std::size_t n_configs, std::uint64_t master_seed,
                                     unsigned threads = 0);

struct Histogram {
  std::vector<double> bin_lo;
  std::vector<double> bin_hi;
  std::vector<std::size_t> count;
  std::vector<double> density;  // count / (total * width)

  std::size_t bins() const noexcept { return count.size(); }
  std::size_t mode_bin() const;
};

/// Equal-width bins over [0, max(values)]; the maximum lands in the last bin.
Histogram make_histogram(std::span<const double> values, std::size_t bins);

struct SemilogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t bins_used = 0;
};

/// Regression of ln(density) on bin centres over bins with at least
/// min_count entries.
SemilogFit fit_semilog_histogram(const Histogram& hist, std::size_t min_count = 10);

struct LambdaBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t agents = 0;
  double mean_wealth = 0.0;
};

/// Mean of `wealth` grouped by `lambda` into equal-width bins over `window`.
std::vector<LambdaBin> bin_by_lambda(std::span<const double> lambda,
                                     std::span<const double> wealth,
                                     Interval window, std::size_t bins);

}  // namespace kinex

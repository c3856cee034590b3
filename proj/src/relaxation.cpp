#include "kinex/relaxation.hpp"

#include <cmath>
#include <numeric>

#include "kinex/error.hpp"
#include "kinex/exchange.hpp"
#include "kinex/parallel.hpp"
#include "kinex/rng.hpp"

namespace kinex {

RelaxationSeries RelaxationSeries::from_values(std::vector<double> x) {
  RelaxationSeries s;
  s.t.resize(x.size());
  std::iota(s.t.begin(), s.t.end(), std::int64_t{1});
  s.x_mean = std::move(x);
  return s;
}

double compute_x(std::span<const double> prev, std::span<const double> curr) {
  if (prev.size() != curr.size()) {
    fail(ErrorCode::ShapeError, "snapshot lengths differ (" + std::to_string(prev.size()) +
                                    " vs " + std::to_string(curr.size()) + ")");
  }
  if (prev.empty()) fail(ErrorCode::ShapeError, "empty snapshots");
  double sum = 0.0;
  for (std::size_t i = 0; i < prev.size(); ++i) sum += std::abs(curr[i] - prev[i]);
  return sum / static_cast<double>(prev.size());
}

RelaxationSeries run_relaxation(const ModelSpec& spec, std::size_t n_agents,
                                std::size_t t_max, std::size_t n_configs,
                                std::uint64_t master_seed, unsigned threads) {
  spec.validate_for(n_agents);
  if (t_max < 2) fail(ErrorCode::InvalidParameter, "t_max must be at least 2");
  if (n_configs < 1) fail(ErrorCode::InvalidParameter, "n_configs must be at least 1");

  const double inv_n = 1.0 / static_cast<double>(n_agents);
  auto one_config = [&](std::size_t c) {
    RngStream rng(master_seed, c);
    AgentEnsemble ens = init_ensemble(spec, n_agents, rng);
    std::vector<double> x(t_max);
    for (auto& v : x) v = run_time_step(ens, spec, rng) * inv_n;
    return x;
  };

  RelaxationSeries series;
  series.x_mean = ordered_sum(n_configs, t_max, resolve_threads(threads), one_config);
  for (auto& v : series.x_mean) v /= static_cast<double>(n_configs);
  series.t.resize(t_max);
  std::iota(series.t.begin(), series.t.end(), std::int64_t{1});
  series.n_configs = n_configs;
  series.n_agents = n_agents;
  series.master_seed = master_seed;
  series.source = spec;
  return series;
}

TailStats equilibrium_tail(const RelaxationSeries& series, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 0.5)) {
    fail(ErrorCode::InvalidParameter, "tail fraction must lie in (0, 0.5]");
  }
  const std::size_t n = series.size();
  if (n < 10) fail(ErrorCode::InsufficientData, "need at least 10 samples for a tail estimate");

  const auto count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(n) + 1e-9)));
  const auto first = series.x_mean.end() - static_cast<std::ptrdiff_t>(count);

  TailStats stats;
  stats.count = count;
  stats.mean = std::accumulate(first, series.x_mean.end(), 0.0) / static_cast<double>(count);
  if (count > 1) {
    double ss = 0.0;
    for (auto it = first; it != series.x_mean.end(); ++it) {
      ss += (*it - stats.mean) * (*it - stats.mean);
    }
    stats.stddev = std::sqrt(ss / static_cast<double>(count - 1));
    stats.std_error = stats.stddev / std::sqrt(static_cast<double>(count));
  }
  return stats;
}

double equilibrium_window_mean(const RelaxationSeries& series, double tail_fraction) {
  return equilibrium_tail(series, tail_fraction).mean;
}

}  // namespace kinex

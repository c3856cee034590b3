#include "kinex/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "kinex/error.hpp"
#include "kinex/exchange.hpp"
#include "kinex/parallel.hpp"
#include "kinex/rng.hpp"

namespace kinex {

EquilibriumSample sample_equilibrium(const ModelSpec& spec, std::size_t n_agents,
                                     std::size_t equilibration, std::size_t n_snapshots,
                                     std::size_t interval, std::size_t n_configs,
                                     std::uint64_t master_seed, unsigned threads) {
  spec.validate_for(n_agents);
  if (n_snapshots < 1 || interval < 1 || n_configs < 1) {
    fail(ErrorCode::InvalidParameter, "snapshots, interval and configs must be positive");
  }

  struct PerConfig {
    std::vector<double> wealth;
    std::vector<double> lambda;
    std::vector<double> mean;
  };
  std::vector<PerConfig> results(n_configs);
  parallel_for(n_configs, resolve_threads(threads), [&](std::size_t c) {
    RngStream rng(master_seed, c);
    AgentEnsemble ens = init_ensemble(spec, n_agents, rng);
    for (std::size_t s = 0; s < equilibration; ++s) run_time_step(ens, spec, rng);
    PerConfig& out = results[c];
    out.wealth.reserve(n_agents * n_snapshots);
    out.mean.assign(n_agents, 0.0);
    for (std::size_t snap = 0; snap < n_snapshots; ++snap) {
      if (snap > 0) {
        for (std::size_t s = 0; s < interval; ++s) run_time_step(ens, spec, rng);
      }
      out.wealth.insert(out.wealth.end(), ens.wealth.begin(), ens.wealth.end());
      for (std::size_t i = 0; i < n_agents; ++i) out.mean[i] += ens.wealth[i];
    }
    for (auto& m : out.mean) m /= static_cast<double>(n_snapshots);
    out.lambda = ens.saving;
  });

  EquilibriumSample sample;
  for (auto& r : results) {
    sample.wealth.insert(sample.wealth.end(), r.wealth.begin(), r.wealth.end());
    sample.agent_lambda.insert(sample.agent_lambda.end(), r.lambda.begin(), r.lambda.end());
    sample.agent_mean_wealth.insert(sample.agent_mean_wealth.end(), r.mean.begin(), r.mean.end());
  }
  return sample;
}

std::size_t Histogram::mode_bin() const {
  return static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
}

Histogram make_histogram(std::span<const double> values, std::size_t bins) {
  if (bins < 1) fail(ErrorCode::InvalidParameter, "need at least one bin");
  if (values.empty()) fail(ErrorCode::InsufficientData, "no values to histogram");
  const double top = *std::max_element(values.begin(), values.end());
  const double width = top > 0.0 ? top / static_cast<double>(bins) : 1.0;

  Histogram h;
  h.count.assign(bins, 0);
  for (double v : values) {
    if (v < 0.0) fail(ErrorCode::InvalidParameter, "negative value in wealth histogram");
    auto b = static_cast<std::size_t>(v / width);
    h.count[std::min(b, bins - 1)] += 1;
  }
  const auto total = static_cast<double>(values.size());
  for (std::size_t b = 0; b < bins; ++b) {
    h.bin_lo.push_back(static_cast<double>(b) * width);
    h.bin_hi.push_back(static_cast<double>(b + 1) * width);
    h.density.push_back(static_cast<double>(h.count[b]) / (total * width));
  }
  return h;
}

SemilogFit fit_semilog_histogram(const Histogram& hist, std::size_t min_count) {
  std::vector<double> x, y;
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    if (hist.count[b] >= std::max<std::size_t>(min_count, 1)) {
      x.push_back(0.5 * (hist.bin_lo[b] + hist.bin_hi[b]));
      y.push_back(std::log(hist.density[b]));
    }
  }
  if (x.size() < 3) fail(ErrorCode::InsufficientData, "fewer than 3 populated bins");
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
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  SemilogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double e = y[k] - fit.intercept - fit.slope * x[k];
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.bins_used = x.size();
  return fit;
}

std::vector<LambdaBin> bin_by_lambda(std::span<const double> lambda,
                                     std::span<const double> wealth, Interval window,
                                     std::size_t bins) {
  if (lambda.size() != wealth.size()) fail(ErrorCode::ShapeError, "lambda and wealth lengths differ");
  if (bins < 1 || !(window.lo < window.hi)) {
    fail(ErrorCode::InvalidParameter, "need a non-empty window and at least one bin");
  }
  std::vector<LambdaBin> out(bins);
  const double width = window.width() / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lo = window.lo + static_cast<double>(b) * width;
    out[b].hi = window.lo + static_cast<double>(b + 1) * width;
  }
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const double pos = (lambda[k] - window.lo) / width;
    if (pos < 0.0) continue;
    const auto b = std::min(static_cast<std::size_t>(pos), bins - 1);
    out[b].agents += 1;
    out[b].mean_wealth += wealth[k];
  }
  for (auto& bin : out) {
    if (bin.agents > 0) bin.mean_wealth /= static_cast<double>(bin.agents);
  }
  return out;
}

}  // namespace kinex

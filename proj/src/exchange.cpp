#include "kinex/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kinex/error.hpp"

namespace kinex {

namespace {

// i keeps `share`, j gets the remainder. For the saving rules the share is
// clamped to [0, total] so that rounding cannot push either side below zero.
PairWealth split_nonnegative(double total, double share) {
  share = std::clamp(share, 0.0, total);
  return {share, total - share};
}

PairWealth pure_gambling(double w_i, double w_j, double eps) {
  const double total = w_i + w_j;
  return split_nonnegative(total, eps * total);
}

PairWealth fixed_saving(double w_i, double w_j, double lambda, double eps) {
  const double total = w_i + w_j;
  return split_nonnegative(total, lambda * w_i + eps * (1.0 - lambda) * total);
}

PairWealth distributed_saving(double w_i, double w_j, double lambda_i,
                              double lambda_j, double eps) {
  const double total = w_i + w_j;
  const double pot = (1.0 - lambda_i) * w_i + (1.0 - lambda_j) * w_j;
  return split_nonnegative(total, lambda_i * w_i + eps * pot);
}

// Written as a transfer from j to i so that the identity map (1, 0) moves
// nothing, not even a rounding error.
PairWealth general(double w_i, double w_j, double eps1, double eps2) {
  const double transfer = (eps1 - 1.0) * w_i + eps2 * w_j;
  return {w_i + transfer, w_j - transfer};
}

void check_wealth(double w_i, double w_j) {
  if (!(w_i >= 0.0) || !(w_j >= 0.0) || !std::isfinite(w_i) || !std::isfinite(w_j)) {
    fail(ErrorCode::InvalidParameter, "wealths must be finite and non-negative");
  }
}

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) fail(ErrorCode::InvalidParameter, "epsilon must lie in [0,1]");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail(ErrorCode::InvalidParameter, "saving propensity must lie in [0,1)");
  }
}

std::size_t lattice_neighbour(std::size_t i, std::size_t side, std::size_t dir) {
  const std::size_t r = i / side;
  const std::size_t c = i % side;
  switch (dir) {
    case 0: return ((r + side - 1) % side) * side + c;
    case 1: return ((r + 1) % side) * side + c;
    case 2: return r * side + (c + side - 1) % side;
    default: return r * side + (c + 1) % side;
  }
}

}  // namespace

double AgentEnsemble::total_wealth() const noexcept {
  return std::accumulate(wealth.begin(), wealth.end(), 0.0);
}

PairWealth exchange_pure_gambling(double w_i, double w_j, double eps) {
  check_wealth(w_i, w_j);
  check_eps(eps);
  return pure_gambling(w_i, w_j, eps);
}

PairWealth exchange_fixed_saving(double w_i, double w_j, double lambda, double eps) {
  check_wealth(w_i, w_j);
  check_lambda(lambda);
  check_eps(eps);
  return fixed_saving(w_i, w_j, lambda, eps);
}

PairWealth exchange_distributed_saving(double w_i, double w_j, double lambda_i,
                                       double lambda_j, double eps) {
  check_wealth(w_i, w_j);
  check_lambda(lambda_i);
  check_lambda(lambda_j);
  check_eps(eps);
  return distributed_saving(w_i, w_j, lambda_i, lambda_j, eps);
}

PairWealth exchange_general(double w_i, double w_j, double eps1, double eps2) {
  return general(w_i, w_j, eps1, eps2);
}

AgentEnsemble init_ensemble(const ModelSpec& spec, std::size_t n_agents, RngStream& rng) {
  spec.validate_for(n_agents);
  AgentEnsemble ens;
  ens.saving.assign(n_agents, 0.0);
  if (spec.rule == ExchangeRule::FixedSaving) {
    ens.saving.assign(n_agents, spec.lambda_fixed);
  } else if (spec.rule == ExchangeRule::DistributedSaving) {
    for (auto& lambda : ens.saving) {
      lambda = rng.uniform(spec.lambda_window.lo, spec.lambda_window.hi);
    }
  }

  const double mean = spec.init.mean_wealth;
  const double total = mean * static_cast<double>(n_agents);
  switch (spec.init.kind) {
    case InitKind::EqualUnit:
      ens.wealth.assign(n_agents, mean);
      break;
    case InitKind::UniformRandom: {
      ens.wealth.resize(n_agents);
      for (auto& w : ens.wealth) w = rng.uniform01();
      const double sum = std::accumulate(ens.wealth.begin(), ens.wealth.end(), 0.0);
      if (sum > 0.0) {
        for (auto& w : ens.wealth) w *= total / sum;
      } else {
        ens.wealth.assign(n_agents, mean);
      }
      break;
    }
    case InitKind::DeltaAtOneAgent:
      ens.wealth.assign(n_agents, 0.0);
      ens.wealth[0] = total;
      break;
  }
  return ens;
}

double run_time_step(AgentEnsemble& ens, const ModelSpec& spec, RngStream& rng) {
  const std::size_t n = ens.size();
  spec.validate_for(n);
  if (ens.saving.size() != n) fail(ErrorCode::ShapeError, "saving and wealth lengths differ");

  const std::vector<double> before = ens.wealth;
  auto& w = ens.wealth;
  const auto& lambda = ens.saving;
  const bool lattice = spec.pairing.kind == Pairing::Lattice2D;

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = rng.below(n);
    std::size_t j;
    if (lattice) {
      j = lattice_neighbour(i, spec.pairing.side, rng.below(4));
    } else {
      j = rng.below(n - 1);
      if (j >= i) ++j;
    }

    PairWealth out;
    if (spec.rule == ExchangeRule::General) {
      const double eps1 = spec.eps1_window.lo + spec.eps1_window.width() * rng.uniform01();
      const double eps2 = spec.eps2_window.lo + spec.eps2_window.width() * rng.uniform01();
      out = general(w[i], w[j], eps1, eps2);
    } else {
      const double eps = spec.epsilon.fixed ? *spec.epsilon.fixed : rng.uniform01();
      switch (spec.rule) {
        case ExchangeRule::PureGambling:
          out = pure_gambling(w[i], w[j], eps);
          break;
        case ExchangeRule::FixedSaving:
          out = fixed_saving(w[i], w[j], lambda[i], eps);
          break;
        default:
          out = distributed_saving(w[i], w[j], lambda[i], lambda[j], eps);
          break;
      }
    }
    w[i] = out.i;
    w[j] = out.j;
  }

  double delta = 0.0;
  for (std::size_t i = 0; i < n; ++i) delta += std::abs(w[i] - before[i]);
  return delta;
}

}  // namespace kinex

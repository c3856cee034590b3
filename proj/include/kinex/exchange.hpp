#pragma once

#include <cstddef>
#include <vector>

#include "kinex/rng.hpp"
#include "kinex/specs.hpp"

namespace kinex {

/// N agents: wealths and per-agent saving propensities (all zero for pure
/// gambling, all equal for fixed saving, quenched draws for distributed
/// saving).
struct AgentEnsemble {
  std::vector<double> wealth;
  std::vector<double> saving;

  std::size_t size() const noexcept { return wealth.size(); }
  double total_wealth() const noexcept;
};

/// Post-interaction wealths of the ordered pair (i, j).
struct PairWealth {
  double i = 0.0;
  double j = 0.0;
};

// Single-interaction rules. Each computes i's share and hands j the rest of
// the pair total, so the sum is preserved to the last bit of the addition.
// The saving rules throw InvalidParameter on out-of-range arguments.

PairWealth exchange_pure_gambling(double w_i, double w_j, double eps);
PairWealth exchange_fixed_saving(double w_i, double w_j, double lambda, double eps);
PairWealth exchange_distributed_saving(double w_i, double w_j, double lambda_i,
                                       double lambda_j, double eps);
/// General linear exchange; eps1/eps2 may be any finite values and the
/// results may be negative.
PairWealth exchange_general(double w_i, double w_j, double eps1, double eps2);

AgentEnsemble init_ensemble(const ModelSpec& spec, std::size_t n_agents,
                            RngStream& rng);

/// Performs exactly N interactions and returns sum_i |w_i(after) - w_i(before)|
/// taken between the snapshots at the two step boundaries.
double run_time_step(AgentEnsemble& ensemble, const ModelSpec& spec,
                     RngStream& rng);

}  // namespace kinex

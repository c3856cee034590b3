#include "kinex/specs.hpp"

#include <cmath>

#include "kinex/error.hpp"

namespace kinex {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidParameter, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void ModelSpec::validate() const {
  switch (rule) {
    case ExchangeRule::PureGambling:
      break;
    case ExchangeRule::FixedSaving:
      require(lambda_fixed >= 0.0 && lambda_fixed < 1.0, "lambda must lie in [0,1)");
      break;
    case ExchangeRule::DistributedSaving:
      require(lambda_window.lo >= 0.0 && lambda_window.hi <= 1.0 &&
                  lambda_window.lo < lambda_window.hi,
              "lambda window must satisfy 0 <= lo < hi <= 1");
      break;
    case ExchangeRule::General:
      require(finite(eps1_window.lo) && finite(eps1_window.hi) &&
                  eps1_window.lo <= eps1_window.hi,
              "eps1 window must be finite with lo <= hi");
      require(finite(eps2_window.lo) && finite(eps2_window.hi) &&
                  eps2_window.lo <= eps2_window.hi,
              "eps2 window must be finite with lo <= hi");
      break;
  }
  if (epsilon.fixed) {
    require(*epsilon.fixed >= 0.0 && *epsilon.fixed <= 1.0, "fixed epsilon must lie in [0,1]");
  }
  require(finite(init.mean_wealth) && init.mean_wealth >= 0.0,
          "mean wealth must be finite and non-negative");
  if (pairing.kind == Pairing::Lattice2D) {
    require(pairing.side >= 2, "lattice side must be at least 2");
  }
}

void ModelSpec::validate_for(std::size_t n_agents) const {
  if (n_agents < 2) fail(ErrorCode::InvalidSize, "need at least 2 agents");
  validate();
  if (pairing.kind == Pairing::Lattice2D && pairing.side * pairing.side != n_agents) {
    fail(ErrorCode::TopologyMismatch,
         "lattice side " + std::to_string(pairing.side) + " does not tile " +
             std::to_string(n_agents) + " agents");
  }
}

void RrnSpec::validate() const {
  require(side >= 3, "lattice side must be at least 3 (no interior nodes otherwise)");
  require(finite(g_window.lo) && finite(g_window.hi) && g_window.lo >= 0.0 &&
              (g_window.lo < g_window.hi || (g_window.lo == g_window.hi && g_window.lo > 0.0)),
          "conductance window must satisfy 0 <= g_min < g_max, or g_min == g_max > 0");
  require(finite(initial_potential), "initial potential must be finite");
}

std::string to_string(ExchangeRule rule) {
  switch (rule) {
    case ExchangeRule::PureGambling: return "pure_gambling";
    case ExchangeRule::FixedSaving: return "fixed_saving";
    case ExchangeRule::DistributedSaving: return "distributed_saving";
    case ExchangeRule::General: return "general";
  }
  return "unknown";
}

std::string to_string(RrnInit init) {
  return init == RrnInit::Ramp ? "ramp" : "uniform";
}

}  // namespace kinex

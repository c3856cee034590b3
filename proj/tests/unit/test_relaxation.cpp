#include <cmath>
#include <numeric>

#include "doctest.h"
#include "kinex/error.hpp"
#include "kinex/exchange.hpp"
#include "kinex/rng.hpp"
#include "kinex/relaxation.hpp"

using namespace kinex;
using doctest::Approx;

namespace {

ModelSpec distributed_half() {
  ModelSpec s;
  s.rule = ExchangeRule::DistributedSaving;
  s.lambda_window = {0, 1};
  s.epsilon = EpsilonMode::constant(0.5);
  return s;
}

}  // namespace

TEST_CASE("compute_x") {
  CHECK(compute_x(std::vector<double>{1, 1}, std::vector<double>{1, 1}) == 0.0);
  CHECK(compute_x(std::vector<double>{1, 1}, std::vector<double>{0.6, 1.4}) == Approx(0.4));
  CHECK(compute_x(std::vector<double>{2, 0, 1, 1}, std::vector<double>{1, 1, 1, 1}) == 0.5);
  try {
    compute_x(std::vector<double>{1, 2}, std::vector<double>{1});
    FAIL("expected ShapeError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeError);
  }
}

TEST_CASE("series shape and positivity") {
  const auto s = run_relaxation(distributed_half(), 20, 30, 8, 4, 1);
  REQUIRE(s.size() == 30);
  CHECK(s.t.front() == 1);
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s.t[k] == s.t[k - 1] + 1);
  for (double x : s.x_mean) CHECK(x >= 0.0);
  CHECK(s.n_configs == 8);
  CHECK(s.n_agents == 20);
  CHECK(s.master_seed == 4);
}

TEST_CASE("saving propensity near one freezes the dynamics") {
  ModelSpec s;
  s.rule = ExchangeRule::FixedSaving;
  s.lambda_fixed = 0.999;
  const auto r = run_relaxation(s, 50, 40, 5, 1, 1);
  for (double x : r.x_mean) CHECK(x < 2e-3);
}

TEST_CASE("identity dynamics gives X = 0") {
  ModelSpec s;
  s.rule = ExchangeRule::General;
  s.eps1_window = {1, 1};
  s.eps2_window = {0, 0};
  s.init = {InitKind::UniformRandom, 1.0};
  const auto r = run_relaxation(s, 30, 20, 4, 2, 1);
  for (double x : r.x_mean) CHECK(x == 0.0);
}

TEST_CASE("same seed gives a bit-identical series for any thread count") {
  const auto a = run_relaxation(distributed_half(), 40, 50, 130, 77, 1);
  const auto b = run_relaxation(distributed_half(), 40, 50, 130, 77, 1);
  const auto c = run_relaxation(distributed_half(), 40, 50, 130, 77, 4);
  CHECK(a.x_mean == b.x_mean);
  CHECK(a.x_mean == c.x_mean);
  const auto d = run_relaxation(distributed_half(), 40, 50, 130, 78, 1);
  CHECK(a.x_mean != d.x_mean);
}

TEST_CASE("x_mean scales linearly with total wealth") {
  ModelSpec one = distributed_half();
  one.init = {InitKind::UniformRandom, 1.0};
  ModelSpec two = one;
  two.init.mean_wealth = 2.0;
  const auto a = run_relaxation(one, 30, 40, 16, 9, 1);
  const auto b = run_relaxation(two, 30, 40, 16, 9, 1);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(b.x_mean[k] == Approx(2 * a.x_mean[k]).epsilon(1e-9));
}

TEST_CASE("configuration average matches hand-driven ensembles") {
  const ModelSpec spec = distributed_half();
  const std::size_t n = 12, t_max = 15, configs = 3;
  std::vector<double> sum(t_max, 0.0);
  for (std::size_t c = 0; c < configs; ++c) {
    RngStream rng(5, c);
    auto e = init_ensemble(spec, n, rng);
    for (std::size_t t = 0; t < t_max; ++t) sum[t] += run_time_step(e, spec, rng) / n;
  }
  const auto s = run_relaxation(spec, n, t_max, configs, 5, 1);
  for (std::size_t t = 0; t < t_max; ++t) CHECK(s.x_mean[t] == Approx(sum[t] / configs).epsilon(1e-12));
}

TEST_CASE("epsilon one half: smoothed X is non-increasing after step 3") {
  const auto s = run_relaxation(distributed_half(), 100, 120, 200, 12, 0);
  std::vector<double> avg;
  for (std::size_t k = 3; k + 2 < s.size(); ++k) {
    avg.push_back((s.x_mean[k] + s.x_mean[k + 1] + s.x_mean[k + 2]) / 3);
  }
  // allowance for configuration noise: a few parts in a thousand of the
  // starting level
  const double slack = 3e-3 * avg.front();
  for (std::size_t k = 1; k < avg.size(); ++k) CHECK(avg[k] <= avg[k - 1] + slack);
}

TEST_CASE("equilibrium window mean") {
  CHECK(equilibrium_window_mean(RelaxationSeries::from_values(std::vector<double>(40, 0.3)), 0.1) ==
        Approx(0.3));
  std::vector<double> ramp(100);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  CHECK(equilibrium_window_mean(RelaxationSeries::from_values(ramp), 0.1) == 95.5);

  // closed form: mean of 0.5 - 0.3 e^{-t/10} over t = 151..200
  std::vector<double> x(200);
  for (int t = 1; t <= 200; ++t) x[t - 1] = 0.5 - 0.3 * std::exp(-t / 10.0);
  const double q = std::exp(-0.1);
  const double oracle = 0.5 - 0.3 * std::exp(-15.1) * (1 - std::pow(q, 50)) / (1 - q) / 50;
  const double got = equilibrium_window_mean(RelaxationSeries::from_values(x), 0.25);
  CHECK(got == Approx(oracle).epsilon(1e-12));
  CHECK(std::abs(got - 0.5) < 1e-4);

  try {
    equilibrium_window_mean(RelaxationSeries::from_values(std::vector<double>(9, 1.0)), 0.25);
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
}

TEST_CASE("tail statistics") {
  std::vector<double> x(40, 1.0);
  for (std::size_t k = 30; k < 40; ++k) x[k] = (k % 2) ? 2.0 : 4.0;
  const auto tail = equilibrium_tail(RelaxationSeries::from_values(x), 0.25);
  CHECK(tail.count == 10);
  CHECK(tail.mean == 3.0);
  CHECK(tail.stddev == Approx(std::sqrt(10.0 / 9.0)));
  CHECK(tail.std_error == Approx(tail.stddev / std::sqrt(10.0)));
}

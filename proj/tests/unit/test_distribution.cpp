#include <cmath>
#include <numeric>

#include "doctest.h"
#include "kinex/distribution.hpp"
#include "kinex/error.hpp"

using namespace kinex;
using doctest::Approx;

TEST_CASE("histogram bins and density") {
  const std::vector<double> v{0.0, 0.1, 0.4, 0.5, 0.9, 1.0};
  const auto h = make_histogram(v, 4);
  REQUIRE(h.bins() == 4);
  CHECK(h.bin_lo.front() == 0.0);
  CHECK(h.bin_hi.back() == 1.0);
  CHECK(h.count == std::vector<std::size_t>{2, 1, 1, 2});
  double mass = 0;
  for (std::size_t b = 0; b < 4; ++b) mass += h.density[b] * (h.bin_hi[b] - h.bin_lo[b]);
  CHECK(mass == Approx(1.0));
  CHECK_THROWS_AS(make_histogram(std::vector<double>{}, 4), Error);
  CHECK_THROWS_AS(make_histogram(v, 0), Error);
}

TEST_CASE("semilog fit of an exact exponential density") {
  // counts proportional to e^{-2x} at bin centres, so ln(density) is linear
  Histogram h;
  for (int b = 0; b < 20; ++b) {
    h.bin_lo.push_back(0.1 * b);
    h.bin_hi.push_back(0.1 * (b + 1));
    const double centre = 0.1 * b + 0.05;
    h.count.push_back(100);
    h.density.push_back(std::exp(-2 * centre));
  }
  const auto f = fit_semilog_histogram(h);
  CHECK(f.slope == Approx(-2.0).epsilon(1e-12));
  CHECK(f.r_squared == Approx(1.0));
  CHECK(f.bins_used == 20);
  h.count[5] = 3;
  CHECK(fit_semilog_histogram(h).bins_used == 19);
}

TEST_CASE("pure gambling equilibrium is exponential") {
  ModelSpec s;
  const auto sample = sample_equilibrium(s, 100, 200, 5, 10, 200, 3, 0);
  CHECK(sample.wealth.size() == 100 * 5 * 200);
  const double mean =
      std::accumulate(sample.wealth.begin(), sample.wealth.end(), 0.0) / sample.wealth.size();
  CHECK(mean == Approx(1.0).epsilon(1e-9));
  const auto f = fit_semilog_histogram(make_histogram(sample.wealth, 50));
  CHECK(std::abs(f.slope + 1 / mean) < 0.05 / mean);
}

TEST_CASE("fixed saving equilibrium has an interior mode") {
  ModelSpec s;
  s.rule = ExchangeRule::FixedSaving;
  s.lambda_fixed = 0.5;
  const auto sample = sample_equilibrium(s, 100, 100, 5, 10, 100, 3, 0);
  CHECK(make_histogram(sample.wealth, 50).mode_bin() > 0);
}

TEST_CASE("lambda binning") {
  const std::vector<double> lambda{0.05, 0.15, 0.55, 0.95, 0.99};
  const std::vector<double> wealth{1, 3, 5, 7, 9};
  const auto bins = bin_by_lambda(lambda, wealth, {0, 1}, 2);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].agents == 2);
  CHECK(bins[0].mean_wealth == 2.0);
  CHECK(bins[1].agents == 3);
  CHECK(bins[1].mean_wealth == 7.0);
  CHECK_THROWS_AS(bin_by_lambda(lambda, std::vector<double>{1}, {0, 1}, 2), Error);
}

TEST_CASE("time-averaged wealth grows with lambda") {
  ModelSpec s;
  s.rule = ExchangeRule::DistributedSaving;
  const auto sample = sample_equilibrium(s, 100, 300, 10, 10, 50, 5, 0);
  CHECK(sample.agent_lambda.size() == 100 * 50);
  const auto bins = bin_by_lambda(sample.agent_lambda, sample.agent_mean_wealth, {0, 1}, 5);
  for (std::size_t b = 0; b + 1 < bins.size(); ++b) CHECK(bins[b].mean_wealth <= bins[b + 1].mean_wealth);
}

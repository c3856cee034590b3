#include <cmath>
#include <numeric>

#include "doctest.h"
#include "kinex/error.hpp"
#include "kinex/exchange.hpp"
#include "kinex/rng.hpp"

using namespace kinex;
using doctest::Approx;

namespace {

ModelSpec distributed(double lo, double hi) {
  ModelSpec s;
  s.rule = ExchangeRule::DistributedSaving;
  s.lambda_window = {lo, hi};
  return s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no kinex::Error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("pure gambling splits the pair total") {
  auto p = exchange_pure_gambling(1, 1, 0.3);
  CHECK(p.i == Approx(0.6));
  CHECK(p.j == Approx(1.4));

  p = exchange_pure_gambling(3.0, 5.0, 0.5);
  CHECK(p.i == 4.0);
  CHECK(p.j == 4.0);

  p = exchange_pure_gambling(0, 0, 0.77);
  CHECK(p.i == 0.0);
  CHECK(p.j == 0.0);

  CHECK(code_of([] { exchange_pure_gambling(1, 1, 1.5); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { exchange_pure_gambling(1, 1, -0.1); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("fixed saving") {
  auto p = exchange_fixed_saving(1, 1, 0.5, 0.5);
  CHECK(p.i == Approx(1.0));
  CHECK(p.j == Approx(1.0));

  p = exchange_fixed_saving(1, 0, 0.5, 0.5);
  CHECK(p.i == Approx(0.75));
  CHECK(p.j == Approx(0.25));

  for (double eps : {0.0, 0.2, 0.9, 1.0}) {
    const auto a = exchange_fixed_saving(1, 1, 0.0, eps);
    const auto b = exchange_pure_gambling(1, 1, eps);
    CHECK(a.i == b.i);
    CHECK(a.j == b.j);
  }
  CHECK(code_of([] { exchange_fixed_saving(1, 1, 1.0, 0.5); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { exchange_fixed_saving(-1, 1, 0.5, 0.5); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("distributed saving") {
  auto p = exchange_distributed_saving(1, 1, 0.2, 0.8, 0.5);
  CHECK(p.i == Approx(0.7));
  CHECK(p.j == Approx(1.3));

  p = exchange_distributed_saving(1, 2, 0.9, 0.1, 0.5);
  CHECK(p.i == Approx(1.85));
  CHECK(p.j == Approx(1.15));

  CHECK(code_of([] { exchange_distributed_saving(1, 1, 0.2, 1.0, 0.5); }) ==
        ErrorCode::InvalidParameter);
}

TEST_CASE("general linear exchange") {
  auto p = exchange_general(1, 1, 1, 0);
  CHECK(p.i == 1.0);
  CHECK(p.j == 1.0);

  p = exchange_general(1, 1, 0.5, 0.5);
  CHECK(p.i == 1.0);
  CHECK(p.j == 1.0);

  // negative output is legal here
  p = exchange_general(2, 1, -0.5, 0.25);
  CHECK(p.i == Approx(-0.75));
  CHECK(p.j == Approx(3.75));
}

TEST_CASE("degeneracies hold pointwise on random inputs") {
  RngStream rng(2024, 7);
  for (int k = 0; k < 1000; ++k) {
    const double wi = 10 * rng.uniform01(), wj = 10 * rng.uniform01();
    const double lam = rng.uniform01(), eps = rng.uniform01();

    const auto d = exchange_distributed_saving(wi, wj, lam, lam, eps);
    const auto f = exchange_fixed_saving(wi, wj, lam, eps);
    CHECK(d.i == Approx(f.i).epsilon(1e-12));
    CHECK(d.j == Approx(f.j).epsilon(1e-12));

    const auto f0 = exchange_fixed_saving(wi, wj, 0.0, eps);
    const auto g = exchange_pure_gambling(wi, wj, eps);
    CHECK(f0.i == g.i);

    const auto gen = exchange_general(wi, wj, eps, eps);
    CHECK(gen.i == Approx(g.i).epsilon(1e-12));
    CHECK(gen.j == Approx(g.j).epsilon(1e-12));
  }
}

TEST_CASE("pair sum preserved and outputs non-negative") {
  RngStream rng(99, 0);
  for (int k = 0; k < 1000; ++k) {
    const double wi = rng.uniform(0, 5), wj = rng.uniform(0, 5);
    const double li = rng.uniform01(), lj = rng.uniform01(), eps = rng.uniform01();
    const auto p = exchange_distributed_saving(wi, wj, li, lj, eps);
    CHECK(p.i >= 0.0);
    CHECK(p.j >= 0.0);
    CHECK(p.i + p.j == Approx(wi + wj).epsilon(1e-15));
    const auto q = exchange_fixed_saving(wi, wj, li, eps);
    CHECK(q.i >= 0.0);
    CHECK(q.j >= 0.0);
  }
}

TEST_CASE("init_ensemble") {
  RngStream rng(1, 0);
  ModelSpec pure;
  auto e = init_ensemble(pure, 4, rng);
  CHECK(e.wealth == std::vector<double>{1, 1, 1, 1});
  CHECK(e.total_wealth() == 4.0);

  ModelSpec delta;
  delta.init = {InitKind::DeltaAtOneAgent, 1.0};
  e = init_ensemble(delta, 100, rng);
  CHECK(std::count(e.wealth.begin(), e.wealth.end(), 100.0) == 1);
  CHECK(std::count(e.wealth.begin(), e.wealth.end(), 0.0) == 99);

  e = init_ensemble(distributed(0.5, 1.0), 1000, rng);
  const auto [lo, hi] = std::minmax_element(e.saving.begin(), e.saving.end());
  CHECK(*lo >= 0.5);
  CHECK(*hi < 1.0);
  const double mean = std::accumulate(e.saving.begin(), e.saving.end(), 0.0) / 1000.0;
  CHECK(std::abs(mean - 0.75) < 0.02);

  CHECK(code_of([&] { init_ensemble(pure, 1, rng); }) == ErrorCode::InvalidSize);
  ModelSpec lattice;
  lattice.pairing = {Pairing::Lattice2D, 10};
  CHECK(code_of([&] { init_ensemble(lattice, 99, rng); }) == ErrorCode::TopologyMismatch);
  CHECK_NOTHROW(init_ensemble(lattice, 100, rng));
}

TEST_CASE("run_time_step: symmetric epsilon leaves two equal agents unchanged") {
  ModelSpec s;
  s.epsilon = EpsilonMode::constant(0.5);
  RngStream rng(5, 0);
  auto e = init_ensemble(s, 2, rng);
  CHECK(run_time_step(e, s, rng) == 0.0);
  CHECK(e.wealth == std::vector<double>{1, 1});
}

TEST_CASE("run_time_step: abs delta sum matches snapshots") {
  ModelSpec s = distributed(0, 1);
  RngStream rng(5, 1);
  auto e = init_ensemble(s, 50, rng);
  for (int t = 0; t < 20; ++t) {
    const auto before = e.wealth;
    const double d = run_time_step(e, s, rng);
    double oracle = 0;
    for (std::size_t i = 0; i < before.size(); ++i) oracle += std::abs(e.wealth[i] - before[i]);
    CHECK(d == Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("run_time_step: conservation for every rule and pairing") {
  ModelSpec fixed;
  fixed.rule = ExchangeRule::FixedSaving;
  fixed.lambda_fixed = 0.3;
  ModelSpec general;
  general.rule = ExchangeRule::General;
  general.eps1_window = {-0.5, 1.5};
  general.eps2_window = {-0.5, 1.5};
  ModelSpec lattice = distributed(0, 1);
  lattice.pairing = {Pairing::Lattice2D, 8};
  ModelSpec uniform_init = distributed(0.2, 0.9);
  uniform_init.init = {InitKind::UniformRandom, 3.0};

  for (const ModelSpec& s : {ModelSpec{}, fixed, distributed(0, 1), general, lattice, uniform_init}) {
    RngStream rng(11, 3);
    auto e = init_ensemble(s, 64, rng);
    const double w0 = e.total_wealth();
    for (int t = 0; t < 50; ++t) run_time_step(e, s, rng);
    CHECK(std::abs(e.total_wealth() - w0) / w0 < 1e-9);
  }
}

TEST_CASE("run_time_step: wealth stays non-negative over a long run") {
  ModelSpec s = distributed(0, 1);
  RngStream rng(8, 0);
  auto e = init_ensemble(s, 100, rng);
  double lowest = 0.0;
  for (int t = 0; t < 5000; ++t) {
    run_time_step(e, s, rng);
    lowest = std::min(lowest, *std::min_element(e.wealth.begin(), e.wealth.end()));
  }
  CHECK(lowest >= 0.0);
}

TEST_CASE("rng streams") {
  RngStream a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs = differs || x != c.next_u64();
  }
  CHECK(differs);

  RngStream r(1, 1);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 70000; ++k) hits[r.below(7)]++;
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  for (int k = 0; k < 10000; ++k) {
    const double u = r.uniform(0.5, 1.0);
    CHECK(u >= 0.5);
    CHECK(u < 1.0);
  }
}

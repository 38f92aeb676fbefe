#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rejuv/error.hpp"
#include "rejuv/random.hpp"
#include "rejuv/taskgen.hpp"

using namespace rejuv;

TEST_CASE("uunifast sums to the target") {
  CHECK(uunifast(1, 0.5, 3) == std::vector<double>{0.5});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto u = uunifast(5, 0.6, seed);
    REQUIRE(u.size() == 5);
    CHECK(std::abs(std::accumulate(u.begin(), u.end(), 0.0) - 0.6) <= 1e-9);
    for (double x : u) CHECK(x >= 0.0);
  }
  CHECK(uunifast(5, 0.6, 42) == uunifast(5, 0.6, 42));
  CHECK(uunifast(5, 0.6, 42) != uunifast(5, 0.6, 43));
  CHECK_THROWS_AS(uunifast(0, 0.5, 1), DomainError);
  CHECK_THROWS_AS(uunifast(3, 1.5, 1), DomainError);
  CHECK_THROWS_AS(uunifast(3, 0.0, 1), DomainError);
}

TEST_CASE("uunifast marginals match rejection sampling on the simplex") {
  constexpr int kDraws = 10'000;
  constexpr double kTotal = 0.6;
  std::vector<std::vector<double>> fast(5), reference(5);
  for (int d = 0; d < kDraws; ++d) {
    const auto u = uunifast(5, kTotal, derive_seed(11, static_cast<std::uint64_t>(d)));
    for (int i = 0; i < 5; ++i) fast[i].push_back(u[i]);
  }
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> coord(0.0, kTotal);
  while (reference[0].size() < kDraws) {
    double x[4];
    double sum = 0.0;
    for (double& v : x) sum += (v = coord(rng));
    if (sum > kTotal) continue;
    for (int i = 0; i < 4; ++i) reference[i].push_back(x[i]);
    reference[4].push_back(kTotal - sum);
  }
  // Two-sample KS critical value at alpha = 0.001 is 1.95 * sqrt(2 / n) ~ 0.0276.
  for (int i = 0; i < 5; ++i) {
    CHECK(oracle::ks_statistic(fast[i], reference[i]) < 0.0276);
  }
}

TEST_CASE("realize_taskset rounding and clamping") {
  const std::vector<Tick> ten{10};
  const auto half = realize_taskset(std::vector<double>{0.5}, ten, 1);
  CHECK(half.tasks == TaskSet({{10, 5}}));
  const auto tiny = realize_taskset(std::vector<double>{0.05}, ten, 1);
  CHECK(tiny.tasks == TaskSet({{10, 1}}));
  CHECK(tiny.realized_utilization == doctest::Approx(0.1));
  CHECK(tiny.target_utilization == doctest::Approx(0.05));
  // Always over 1 after rounding: two tasks at 0.55 on period 10 -> 6/10 each.
  CHECK_THROWS_AS(realize_taskset(std::vector<double>{0.55, 0.55}, ten, 1, 20), GenerationError);
  CHECK_THROWS_AS(realize_taskset(std::vector<double>{0.5}, std::vector<Tick>{}, 1), DomainError);
}

TEST_CASE("generated sets respect the rejection rule") {
  const std::vector<Tick> pool = kDivisorFriendlyPeriods;
  for (double target : {0.3, 0.6, 0.9, 1.0}) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      GenSpec spec;
      spec.target_utilization = target;
      spec.seed = seed;
      const auto g = generate_taskset(spec);
      CHECK(g.tasks.feasible());
      CHECK(g.realized_utilization <= 1.0 + 1e-12);
      CHECK(std::abs(g.realized_utilization - target) <= 5.0 / 10.0);
      for (const Task& t : g.tasks.tasks()) {
        CHECK(t.wcet >= 1);
        CHECK(t.wcet <= t.period);
        CHECK(std::find(pool.begin(), pool.end(), t.period) != pool.end());
      }
      CHECK(g.tasks.hyperperiod() <= 240);
      if (target == 1.0) CHECK(g.tasks.demand_per_hyperperiod() == g.tasks.hyperperiod());
    }
  }
}

TEST_CASE("generation is deterministic") {
  GenSpec spec;
  spec.target_utilization = 0.7;
  spec.seed = 77;
  const auto a = generate_taskset(spec);
  const auto b = generate_taskset(spec);
  CHECK(a.tasks == b.tasks);
  CHECK(a.attempts == b.attempts);
}

TEST_CASE("periods drawn from the full range") {
  GenSpec spec;
  spec.periods_any = true;
  spec.target_utilization = 0.5;
  std::vector<int> seen(21, 0);
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    spec.seed = seed;
    const auto g = generate_taskset(spec);
    for (const Task& t : g.tasks.tasks()) {
      REQUIRE(t.period >= 10);
      REQUIRE(t.period <= 20);
      ++seen[static_cast<std::size_t>(t.period)];
    }
  }
  for (int p = 10; p <= 20; ++p) CHECK(seen[static_cast<std::size_t>(p)] > 0);
  spec.period_min = 30;
  CHECK_THROWS_AS(generate_taskset(spec), DomainError);
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rejuv/error.hpp"
#include "rejuv/reliability.hpp"

using namespace rejuv;

namespace {

const HazardModel kAging = HazardModel::weibull(3.0, 1000.0);

SystemParams with_rho(double rho) {
  SystemParams p;
  p.rho = rho;
  return p;
}

}  // namespace

TEST_CASE("survival") {
  CHECK(survival(kAging, 0.0) == 1.0);
  CHECK(survival(kAging, 20.0) == doctest::Approx(std::exp(-8e-6)).epsilon(1e-15));
  CHECK(survival(HazardModel::weibull(1.0, 1000.0), 1000.0) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK_THROWS_AS(survival(kAging, -1.0), DomainError);
  CHECK(survival(HazardModel::none(), 1e9) == 1.0);
}

TEST_CASE("survival matches quadrature of the hazard") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shape(0.5, 5.0), scale(1.0, 1e4), frac(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double k = shape(rng), r = scale(rng), t = frac(rng) * r;
    const double expected = oracle::weibull_survival_quadrature(k, r, t);
    const double got = HazardModel::weibull(k, r).survival(t);
    if (expected > 1e-300) {
      CHECK(std::abs(got - expected) / expected <= 1e-9);
    }
  }
}

TEST_CASE("hazard model parameters") {
  CHECK_THROWS_AS(HazardModel::weibull(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(HazardModel::weibull(2.0, -1.0), DomainError);
  CHECK(kAging.ages());
  CHECK_FALSE(HazardModel::weibull(1.0, 5.0).ages());
  CHECK(kAging.hazard(10.0) == doctest::Approx(3e-7));
}

TEST_CASE("reliability with a partial last segment") {
  SUBCASE("no failure sources") {
    CHECK(reliability(HazardModel::none(), with_rho(1.0), 100.0, 20.0) == 1.0);
  }
  SUBCASE("five full segments") {
    // 50-digit evaluation of 0.99999^8 * exp(-5 * 8e-6).
    CHECK(reliability(kAging, with_rho(0.99999), 100.0, 20.0) ==
          doctest::Approx(0.99988000679975733947).epsilon(1e-12));
    const double big = static_cast<double>(oracle::reliability_big(3.0, 1000.0, 0.99999, 100, 20));
    CHECK(reliability(kAging, with_rho(0.99999), 100.0, 20.0) == doctest::Approx(big).epsilon(1e-12));
  }
  SUBCASE("single segment has no migration factor") {
    CHECK(reliability(kAging, with_rho(0.99999), 15.0, 20.0) ==
          doctest::Approx(std::exp(-3.375e-6)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(reliability(kAging, with_rho(0.9), 0.0, 20.0), DomainError);
  CHECK_THROWS_AS(reliability(kAging, with_rho(0.9), 10.0, -1.0), DomainError);
  CHECK_THROWS_AS(reliability(kAging, with_rho(1.5), 10.0, 1.0), DomainError);
}

TEST_CASE("log-space evaluation survives huge exponents") {
  const double lr = log_reliability(kAging, with_rho(0.9), 1e7, 1.0);
  CHECK(std::isfinite(lr));
  CHECK(lr == doctest::Approx(2.0 * (1e7 - 1.0) * std::log(0.9) - 1e7 * 1e-9).epsilon(1e-12));
  CHECK(reliability(kAging, with_rho(0.9), 1e7, 1.0) == 0.0);
}

TEST_CASE("reliability against the 50-digit oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> longevity(1, 3000), period(1, 200);
  std::uniform_real_distribution<double> rho(0.99, 1.0);
  for (int i = 0; i < 300; ++i) {
    const int l = longevity(rng), t = period(rng);
    const double p = rho(rng);
    const double expected = static_cast<double>(oracle::reliability_big(3.0, 1000.0, p, l, t));
    CHECK(reliability(kAging, with_rho(p), l, t) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("worst-case reliability") {
  CHECK(worst_case_reliability(HazardModel::none(), with_rho(1.0), 100.0, 20.0) == 1.0);
  CHECK(worst_case_reliability(kAging, with_rho(0.99999), 100.0, 20.0) ==
        doctest::Approx(reliability(kAging, with_rho(0.99999), 100.0, 20.0)).epsilon(1e-14));
  // Real-valued L/T_r = 10/3: the real exponent charges fewer migrations than
  // the integer count, so this is above the partial-segment value.
  const double wc = worst_case_reliability(kAging, with_rho(0.99999), 100.0, 30.0);
  const double partial = reliability(kAging, with_rho(0.99999), 100.0, 30.0);
  CHECK(wc == doctest::Approx(0.99986334243849379654).epsilon(1e-12));
  CHECK(partial == doctest::Approx(0.99985800978156339956).epsilon(1e-12));
}

TEST_CASE("reliability properties") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rho(0.9, 1.0), period(1.0, 100.0), frac(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const SystemParams p = with_rho(rho(rng));
    const double t = period(rng);
    const double n = std::floor(frac(rng) * 20.0) + 1.0;
    // Two longevities in the same segment count: the longer one is no more reliable.
    const double l1 = (n - 1.0) * t + t * (0.01 + 0.49 * frac(rng));
    const double l2 = (n - 1.0) * t + t * (0.5 + 0.49 * frac(rng));
    const double r1 = reliability(kAging, p, l1, t);
    const double r2 = reliability(kAging, p, l2, t);
    CHECK(r1 >= 0.0);
    CHECK(r1 <= 1.0);
    CHECK(r2 <= r1);
  }
}

TEST_CASE("Monte-Carlo estimate") {
  SUBCASE("certain success") {
    const auto mc = monte_carlo_reliability(HazardModel::none(), with_rho(1.0), 100.0, 20.0, 1000, 1);
    CHECK(mc.estimate == 1.0);
    CHECK(mc.std_error == 0.0);
  }
  SUBCASE("aging and lossy migration") {
    const auto mc = monte_carlo_reliability(kAging, with_rho(0.99), 100.0, 20.0, 1'000'000, 5);
    const double exact = reliability(kAging, with_rho(0.99), 100.0, 20.0);
    CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error);
  }
  SUBCASE("migration term dominates") {
    const auto mc = monte_carlo_reliability(kAging, with_rho(0.5), 100.0, 20.0, 100'000, 9);
    const double exact = reliability(kAging, with_rho(0.5), 100.0, 20.0);
    CHECK(exact == doctest::Approx(0.5 * 0.5 * 0.5 * 0.5 * 0.5 * 0.5 * 0.5 * 0.5).epsilon(1e-4));
    CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error);
  }
  SUBCASE("deterministic per seed") {
    const auto a = monte_carlo_reliability(kAging, with_rho(0.7), 50.0, 7.0, 5000, 42);
    const auto b = monte_carlo_reliability(kAging, with_rho(0.7), 50.0, 7.0, 5000, 42);
    CHECK(a.successes == b.successes);
  }
  CHECK_THROWS_AS(monte_carlo_reliability(kAging, with_rho(0.7), 50.0, 7.0, 0, 42), DomainError);
}

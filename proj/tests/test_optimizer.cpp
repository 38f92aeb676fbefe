#include <cmath>
#include <random>

#include "doctest.h"
#include "rejuv/error.hpp"
#include "rejuv/optimizer.hpp"
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

TEST_CASE("period grid") {
  const auto grid = PeriodGrid::standard();
  REQUIRE(grid.size() == 21);
  CHECK(grid.values().front() == 1.0);
  CHECK(grid.values()[1] == 5.0);
  CHECK(grid.values().back() == 100.0);
  CHECK_THROWS_AS(PeriodGrid(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(PeriodGrid({5.0, 5.0}), DomainError);
  CHECK_THROWS_AS(PeriodGrid({0.0, 5.0}), DomainError);
}

TEST_CASE("closed-form optimum") {
  CHECK(optimal_period_closed_form(kAging, 0.99999) == doctest::Approx(21.54).epsilon(0.01 / 21.54));
  CHECK(optimal_period_closed_form(HazardModel::weibull(2.0, 1.0), std::exp(-1.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // (10^9 * -ln(0.999999))^(1/3) = 10.0000016667
  CHECK(optimal_period_closed_form(kAging, 0.999999) == doctest::Approx(10.0000016667).epsilon(1e-10));
  CHECK_THROWS_AS(optimal_period_closed_form(HazardModel::weibull(1.0, 10.0), 0.9),
                  NoInteriorOptimumError);
  CHECK_THROWS_AS(optimal_period_closed_form(HazardModel::weibull(0.5, 10.0), 0.9),
                  NoInteriorOptimumError);
  CHECK_THROWS_AS(optimal_period_closed_form(HazardModel::none(), 0.9), NoInteriorOptimumError);
  CHECK_THROWS_AS(optimal_period_closed_form(kAging, 1.0), DegenerateOptimumError);
}

TEST_CASE("numeric root of the stationarity condition") {
  CHECK(std::abs(optimal_period_numeric(kAging, 0.99999, 1.0, 100.0, 1e-6) - 21.5443828077) <= 1e-6);
  CHECK(std::abs(optimal_period_numeric(kAging, 0.999999, 1.0, 100.0, 1e-6) - 10.0000016667) <= 1e-6);
  const auto k2 = HazardModel::weibull(2.0, 50.0);
  CHECK(std::abs(optimal_period_numeric(k2, 0.999, 0.1, 500.0, 1e-6) - 2.2366272975) <= 1e-6);
  CHECK(std::abs(optimal_period_numeric(k2, 0.999, 0.1, 500.0, 1e-6) -
                 optimal_period_closed_form(k2, 0.999)) <= 1e-6);
  CHECK_THROWS_AS(optimal_period_numeric(kAging, 0.99999, 30.0, 100.0, 1e-6), BracketError);
  CHECK_THROWS_AS(optimal_period_numeric(kAging, 0.99999, 1.0, 100.0, 0.0), DomainError);
}

TEST_CASE("closed form and numeric root agree on random draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> shape(1.0, 5.0), log_scale(1.0, 4.0), rho(0.9, 1.0);
  for (int i = 0; i < 100; ++i) {
    double k = shape(rng);
    if (k <= 1.0) k = 1.0001;
    const double r = std::pow(10.0, log_scale(rng));
    const double p = rho(rng);
    const auto model = HazardModel::weibull(k, r);
    const double closed = optimal_period_closed_form(model, p);
    const double numeric = optimal_period_numeric(model, p, 1e-9 * r, 1e3 * r, 1e-6);
    CHECK(std::abs(closed - numeric) <= 1e-6);
  }
}

TEST_CASE("grid argmax of reliability") {
  const auto grid = PeriodGrid::standard();
  const auto at100 = grid_argmax_reliability(kAging, with_rho(0.99999), 100.0, grid);
  const auto at1000 = grid_argmax_reliability(kAging, with_rho(0.99999), 1000.0, grid);
  CHECK(at100.period == 20.0);
  CHECK(at1000.period == 20.0);
  CHECK(at100.method == OptimizationMethod::grid_scan);
  CHECK(at100.objective == doctest::Approx(reliability(kAging, with_rho(0.99999), 100.0, 20.0)));
  // No aging: every rejuvenation only adds migration risk.
  CHECK(grid_argmax_reliability(HazardModel::none(), with_rho(0.9), 100.0, grid).period == 100.0);
  // All ties resolve to the smallest period.
  CHECK(grid_argmax_reliability(HazardModel::none(), with_rho(1.0), 100.0, grid).period == 1.0);
}

TEST_CASE("argmax does not depend on longevity") {
  const auto grid = PeriodGrid::standard();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> shape(1.5, 4.0), rho(0.9999, 0.999999);
  for (int i = 0; i < 50; ++i) {
    const auto model = HazardModel::weibull(shape(rng), 1000.0);
    const auto p = with_rho(rho(rng));
    // A common multiple of every grid period.
    const double l1 = 1'163'962'800.0;
    const double l2 = 2.0 * l1;
    CHECK(grid_argmax_reliability(model, p, l1, grid).period ==
          grid_argmax_reliability(model, p, l2, grid).period);
  }
}

TEST_CASE("worst-case reliability is unimodal over the grid") {
  const auto grid = PeriodGrid::standard();
  for (double k : {2.0, 3.0, 4.0}) {
    for (double rho : {0.9999, 0.99999, 0.999999}) {
      const auto model = HazardModel::weibull(k, 1000.0);
      int local_maxima = 0;
      const auto v = grid.values();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double here = log_worst_case_reliability(model, with_rho(rho), 1000.0, v[i]);
        const bool left = i == 0 || here > log_worst_case_reliability(model, with_rho(rho), 1000.0, v[i - 1]);
        const bool right = i + 1 == v.size() ||
                           here > log_worst_case_reliability(model, with_rho(rho), 1000.0, v[i + 1]);
        local_maxima += (left && right) ? 1 : 0;
      }
      CHECK(local_maxima == 1);
    }
  }
}

TEST_CASE("longevity under a reliability floor") {
  CHECK(max_longevity(kAging, with_rho(0.99999), 1.0, 0.9997) == 17.0);
  CHECK(max_longevity(kAging, with_rho(0.999999), 10.0, 0.9997) == 1004.0);
  CHECK(max_longevity(kAging, with_rho(0.999999), 1.0, 0.9997) == 151.0);
  CHECK(max_longevity(kAging, with_rho(0.9), 20.0, 0.0, 1.0, 5000.0) == 5000.0);
  // A floor that fails at the first step.
  CHECK(max_longevity(kAging, with_rho(0.5), 1.0, 0.9999999999) == 1.0);
}

TEST_CASE("doubling search equals the linear scan") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> rho(0.99999, 1.0), floor(0.999, 0.99999);
  std::uniform_int_distribution<int> period(1, 60);
  for (int i = 0; i < 40; ++i) {
    const auto p = with_rho(rho(rng));
    const double t = period(rng);
    const double f = floor(rng);
    double linear = 5000.0;
    for (int l = 1; l <= 5000; ++l) {
      if (reliability(kAging, p, l, t) < f) {
        linear = l;
        break;
      }
    }
    CHECK(max_longevity(kAging, p, t, f, 1.0, 5000.0) == linear);
  }
}

TEST_CASE("period maximizing longevity") {
  const auto grid = PeriodGrid::standard();
  const auto best = optimal_period_for_longevity(kAging, with_rho(0.999999), 0.9997, grid);
  CHECK(best.best.period == 10.0);
  CHECK(best.best.objective == 1004.0);
  CHECK(std::isfinite(best.decay_rate));

  const auto low = optimal_period_for_longevity(kAging, with_rho(0.99999), 0.9997, grid);
  CHECK(low.longevities[5] > low.longevities[0]);  // T_r = 25 vs T_r = 1

  const auto flat = optimal_period_for_longevity(HazardModel::none(), with_rho(1.0), 0.9997, grid,
                                                 1.0, 2000.0);
  for (double l : flat.longevities) CHECK(l == 2000.0);
  CHECK(flat.best.period == 1.0);
}

TEST_CASE("curvature diagnostic") {
  // Central difference against a finer step.
  const double coarse = reliability_curvature(kAging, with_rho(0.99999), 1000.0, 20.0);
  const double fine = reliability_curvature(kAging, with_rho(0.99999), 1000.0, 20.0, 1e-2);
  CHECK(coarse == doctest::Approx(fine).epsilon(1e-3));
  CHECK(coarse < 0.0);  // near the reliability maximum
}

TEST_CASE("availability") {
  CHECK(availability(100.0, 50.0, 0.5) == doctest::Approx(0.995).epsilon(1e-15));
  CHECK(availability(100.0, 100.0, 0.5) == 1.0);
  CHECK(availability(100.0, 10.0, 0.5) == doctest::Approx(0.955).epsilon(1e-15));
  CHECK_THROWS_AS(availability(100.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(availability(100.0, 10.0, -0.1), DomainError);
  // Non-increasing in the rejuvenation count.
  double previous = 2.0;
  for (int t = 100; t >= 1; --t) {
    const double a = availability(100.0, t, 0.5);
    CHECK(a <= previous + 1e-15);
    previous = a;
  }
}

TEST_CASE("MAX-AVA") {
  auto p = with_rho(0.99999);
  const double period = max_ava(kAging, p, 100.0, 0.9997);
  CHECK(period == 50.0);
  CHECK(availability(100.0, period, 0.5) == doctest::Approx(0.995).epsilon(1e-15));
  CHECK(max_ava(kAging, with_rho(0.999999), 100.0, 0.9997) == 50.0);
  CHECK(max_ava(HazardModel::none(), with_rho(1.0), 100.0, 0.99) == 100.0);

  const auto brittle = HazardModel::weibull(3.0, 10.0);
  CHECK(max_ava(brittle, with_rho(0.9), 100.0, 0.9999) == kMaxAvaFailure);
  // Exhaustive oracle: no n in [0, L] reaches the floor.
  for (int n = 0; n <= 100; ++n) {
    CHECK(worst_case_reliability(brittle, with_rho(0.9), 100.0, 100.0 / (n + 1)) < 0.9999);
  }
}

TEST_CASE("MAX-AVA result is the largest feasible candidate") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> rho(0.9999, 1.0), floor(0.99, 0.9999);
  for (int i = 0; i < 50; ++i) {
    const auto p = with_rho(rho(rng));
    const double f = floor(rng);
    const double period = max_ava(kAging, p, 100.0, f);
    if (period == kMaxAvaFailure) continue;
    CHECK(worst_case_reliability(kAging, p, 100.0, period) >= f);
    const int n = static_cast<int>(std::lround(100.0 / period)) - 1;
    for (int smaller = 0; smaller < n; ++smaller) {
      CHECK(worst_case_reliability(kAging, p, 100.0, 100.0 / (smaller + 1)) < f);
    }
  }
}

TEST_CASE("minimal reliable period") {
  CHECK(min_period_for_reliability(HazardModel::none(), with_rho(1.0), 50.0, 0.5) == 1.0);
  CHECK(min_period_for_reliability(HazardModel::none(), with_rho(1.0), 50.0, 0.5, 3.0) == 3.0);
  // Linear scan oracle: first T in 1..100 with reliability >= 0.9997 is 7.
  int scanned = -1;
  for (int t = 1; t <= 100; ++t) {
    if (reliability(kAging, with_rho(0.99999), 100.0, t) >= 0.9997) {
      scanned = t;
      break;
    }
  }
  CHECK(scanned == 7);
  CHECK(min_period_for_reliability(kAging, with_rho(0.99999), 100.0, 0.9997) == 7.0);
  CHECK_THROWS_AS(min_period_for_reliability(kAging, with_rho(0.99999), 100.0, 0.999999),
                  InfeasibleError);
}

TEST_CASE("T_min preserves the rejuvenation count") {
  CHECK(t_min(10, 5) == 4);
  CHECK(t_min(12, 6) == 5);
  CHECK(t_min(7, 7) == 4);
  CHECK_THROWS_AS(t_min(5, 6), DomainError);
  CHECK_THROWS_AS(t_min(5, 0), DomainError);
}

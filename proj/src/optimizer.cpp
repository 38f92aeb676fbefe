#include "rejuv/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "rejuv/error.hpp"
#include "rejuv/reliability.hpp"

namespace rejuv {

PeriodGrid::PeriodGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("period grid is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("period grid values must be positive");
    }
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw DomainError("period grid must be strictly increasing");
    }
  }
}

PeriodGrid PeriodGrid::standard() {
  std::vector<double> values{1.0};
  for (int t = 5; t <= 100; t += 5) values.push_back(t);
  return PeriodGrid(std::move(values));
}

std::string_view to_string(OptimizationMethod method) {
  switch (method) {
    case OptimizationMethod::closed_form:
      return "closed_form";
    case OptimizationMethod::numeric_root:
      return "numeric_root";
    case OptimizationMethod::grid_scan:
      return "grid_scan";
  }
  return "unknown";
}

namespace {

void check_optimum_inputs(const HazardModel& model, double rho) {
  if (!model.ages()) {
    throw NoInteriorOptimumError(
        "failure rate does not increase with age (needs a Weibull shape > 1)");
  }
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("rho must lie in (0, 1]");
  if (rho == 1.0) {
    throw DegenerateOptimumError("rho == 1: lossless migration makes the optimum period zero");
  }
}

}  // namespace

double optimal_period_closed_form(const HazardModel& model, double rho) {
  check_optimum_inputs(model, rho);
  const double k = model.shape();
  const double rk = std::pow(model.scale(), k);
  return std::pow(2.0 * rk * std::log(rho) / (1.0 - k), 1.0 / k);
}

double stationarity_residual(const HazardModel& model, double rho, double period) {
  if (!(period > 0.0)) throw DomainError("period must be positive");
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("rho must lie in (0, 1]");
  // dS/dT / S = -lambda(T) and ln S(T) = -H(T).
  return model.cumulative_hazard(period) - period * model.hazard(period) - 2.0 * std::log(rho);
}

double optimal_period_numeric(const HazardModel& model, double rho, double lo, double hi,
                              double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("bracket must satisfy 0 < lo < hi");
  const auto residual = [&](double t) { return stationarity_residual(model, rho, t); };
  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw BracketError("stationarity residual does not change sign on [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  const auto done = [tol](double a, double b) { return b - a <= tol; };
  const auto [a, b] = boost::math::tools::bisect(residual, lo, hi, done);
  return 0.5 * (a + b);
}

OptimizationResult grid_argmax_reliability(const HazardModel& model, const SystemParams& params,
                                           double longevity, const PeriodGrid& grid) {
  OptimizationResult best{0.0, -std::numeric_limits<double>::infinity(),
                          OptimizationMethod::grid_scan};
  double best_log = -std::numeric_limits<double>::infinity();
  for (double period : grid.values()) {
    const double lr = log_reliability(model, params, longevity, period);
    // Strict comparison keeps the smaller period on ties.
    if (lr > best_log || best.period == 0.0) {
      best_log = lr;
      best.period = period;
    }
  }
  best.objective = std::exp(best_log);
  return best;
}

double max_longevity(const HazardModel& model, const SystemParams& params, double period,
                     double floor, double step, double cap) {
  if (!(step > 0.0)) throw DomainError("longevity step must be positive");
  if (!(cap >= step)) throw DomainError("longevity cap must be at least one step");
  if (!(period > 0.0)) throw DomainError("rejuvenation period must be positive");
  const auto fails = [&](std::int64_t m) {
    return reliability(model, params, static_cast<double>(m) * step, period) < floor;
  };
  const auto last = static_cast<std::int64_t>(std::floor(cap / step));
  if (!fails(last)) return cap;
  if (fails(1)) return step;

  // Invariant: fails(hi) and !fails(lo).
  std::int64_t lo = 1;
  std::int64_t hi = 2;
  while (hi < last && !fails(hi)) {
    lo = hi;
    hi = std::min(last, hi * 2);
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (fails(mid) ? hi : lo) = mid;
  }
  return static_cast<double>(hi) * step;
}

double reliability_curvature(const HazardModel& model, const SystemParams& params,
                             double longevity, double period, double h) {
  if (!(period > 0.0)) throw DomainError("rejuvenation period must be positive");
  if (h <= 0.0) h = 1e-3 * period;
  if (!(h < period)) throw DomainError("difference step must be smaller than the period");
  const auto r = [&](double t) { return worst_case_reliability(model, params, longevity, t); };
  return (r(period + h) - 2.0 * r(period) + r(period - h)) / (h * h);
}

LongevityOptimum optimal_period_for_longevity(const HazardModel& model, const SystemParams& params,
                                              double floor, const PeriodGrid& grid, double step,
                                              double cap) {
  LongevityOptimum result;
  result.best.method = OptimizationMethod::grid_scan;
  result.best.objective = -1.0;
  for (double period : grid.values()) {
    const double longevity = max_longevity(model, params, period, floor, step, cap);
    result.longevities.push_back(longevity);
    if (longevity > result.best.objective) {
      result.best.objective = longevity;
      result.best.period = period;
    }
  }
  result.decay_rate = reliability_curvature(model, params, result.best.objective, result.best.period);
  return result;
}

double availability(double longevity, double period, double rejuvenation_cost) {
  if (!(rejuvenation_cost >= 0.0)) throw DomainError("rejuvenation cost must be >= 0");
  if (!(rejuvenation_cost < period)) {
    throw DomainError("rejuvenation cost must be shorter than the rejuvenation period");
  }
  const auto rejuvenations = static_cast<double>(segment_count(longevity, period) - 1);
  return (longevity - rejuvenations * rejuvenation_cost) / longevity;
}

double max_ava(const HazardModel& model, const SystemParams& params, double longevity,
               double floor) {
  if (!(longevity > 0.0)) throw DomainError("longevity must be positive");
  if (!(floor > 0.0 && floor <= 1.0)) throw DomainError("reliability floor must lie in (0, 1]");
  // The loop condition evaluates the worst-case reliability at the current
  // candidate L/(n+1); the printed R(L, L/n) is undefined at n = 0.
  double n = 0.0;
  double period = longevity / (n + 1.0);
  while (worst_case_reliability(model, params, longevity, period) < floor && n <= longevity) {
    n += 1.0;
    period = longevity / (n + 1.0);
  }
  if (n > longevity) period = kMaxAvaFailure;
  return period;
}

double min_period_for_reliability(const HazardModel& model, const SystemParams& params,
                                  double longevity, double floor, double step) {
  if (!(step > 0.0)) throw DomainError("period step must be positive");
  if (!(longevity > 0.0)) throw DomainError("longevity must be positive");
  for (std::int64_t m = 1;; ++m) {
    const double period = static_cast<double>(m) * step;
    if (reliability(model, params, longevity, period) >= floor) return period;
    // Beyond L every period gives the same single-segment reliability.
    if (period >= longevity) break;
  }
  throw InfeasibleError("no rejuvenation period meets reliability floor " +
                        std::to_string(floor) + " over longevity " + std::to_string(longevity));
}

std::int64_t t_min(std::int64_t longevity, std::int64_t period) {
  if (period <= 0 || period > longevity) throw DomainError("t_min needs 0 < T_r <= L");
  const std::int64_t count = longevity / period;
  return longevity / (count + 1) + 1;
}

}  // namespace rejuv

#include "rejuv/reliability.hpp"

#include <cmath>
#include <string>

#include "rejuv/error.hpp"
#include "rejuv/random.hpp"

namespace rejuv {
namespace {

void check_horizon(double longevity, double period) {
  if (!(longevity > 0.0) || !std::isfinite(longevity)) {
    throw DomainError("longevity must be positive, got " + std::to_string(longevity));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw DomainError("rejuvenation period must be positive, got " + std::to_string(period));
  }
}

void check_rho(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("rho must lie in (0, 1]");
}

// ln(rho) * count, with the rho == 1 case exactly zero.
double migration_log(double rho, double migrations) {
  return rho == 1.0 ? 0.0 : migrations * std::log(rho);
}

}  // namespace

std::int64_t segment_count(double longevity, double period) {
  check_horizon(longevity, period);
  const double ratio = longevity / period;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * nearest) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(ratio));
}

double log_reliability(const HazardModel& model, const SystemParams& params, double longevity,
                       double period) {
  check_rho(params.rho);
  const std::int64_t segments = segment_count(longevity, period);
  const double full = static_cast<double>(segments - 1);
  const double last = std::max(0.0, longevity - period * full);
  return migration_log(params.rho, 2.0 * full) - full * model.cumulative_hazard(period) -
         model.cumulative_hazard(last);
}

double reliability(const HazardModel& model, const SystemParams& params, double longevity,
                   double period) {
  return std::exp(log_reliability(model, params, longevity, period));
}

double log_worst_case_reliability(const HazardModel& model, const SystemParams& params,
                                  double longevity, double period) {
  check_horizon(longevity, period);
  check_rho(params.rho);
  const double ratio = longevity / period;
  return migration_log(params.rho, 2.0 * (ratio - 1.0)) - ratio * model.cumulative_hazard(period);
}

double worst_case_reliability(const HazardModel& model, const SystemParams& params,
                              double longevity, double period) {
  return std::exp(log_worst_case_reliability(model, params, longevity, period));
}

MonteCarloEstimate monte_carlo_reliability(const HazardModel& model, const SystemParams& params,
                                           double longevity, double period, std::uint64_t trials,
                                           std::uint64_t seed) {
  if (trials == 0) throw DomainError("monte carlo needs at least one trial");
  check_rho(params.rho);
  const std::int64_t segments = segment_count(longevity, period);
  const double full = static_cast<double>(segments - 1);
  const double last = std::max(0.0, longevity - period * full);
  // -expm1(-H) keeps small failure probabilities accurate.
  const double p_fail_full = -std::expm1(-model.cumulative_hazard(period));
  const double p_fail_last = -std::expm1(-model.cumulative_hazard(last));
  const double p_migration_fail = 1.0 - params.rho;

  Rng rng(seed);
  std::uint64_t successes = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    bool ok = true;
    for (std::int64_t s = 0; ok && s + 1 < segments; ++s) {
      if (unit_uniform(rng) < p_fail_full) ok = false;
      // Out to the backup unit and back again.
      if (ok && unit_uniform(rng) < p_migration_fail) ok = false;
      if (ok && unit_uniform(rng) < p_migration_fail) ok = false;
    }
    if (ok && unit_uniform(rng) < p_fail_last) ok = false;
    successes += ok ? 1 : 0;
  }

  MonteCarloEstimate result;
  result.trials = trials;
  result.successes = successes;
  result.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  result.std_error =
      std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(trials));
  return result;
}

}  // namespace rejuv

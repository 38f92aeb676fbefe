#pragma once

#include <cstdint>

#include "rejuv/hazard.hpp"
#include "rejuv/system.hpp"

namespace rejuv {

/// Number of uptime segments ceil(L / T_r), robust to round-off when L / T_r
/// is within a few ulps of an integer.
std::int64_t segment_count(double longevity, double period);

/// Natural log of reliability(); finite even when the probability underflows.
double log_reliability(const HazardModel& model, const SystemParams& params, double longevity,
                       double period);

/// Probability of no transient failure and no failed migration over [0, L]
/// when rejuvenating every `period` time units. The last segment may be
/// partial; each rejuvenation costs two migrations.
double reliability(const HazardModel& model, const SystemParams& params, double longevity,
                   double period);

double log_worst_case_reliability(const HazardModel& model, const SystemParams& params,
                                  double longevity, double period);

/// Reliability with the last segment taken as a full period and L / T_r used
/// as a real number. Equals reliability() when L is a multiple of the period
/// and bounds it from below otherwise.
double worst_case_reliability(const HazardModel& model, const SystemParams& params,
                              double longevity, double period);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

/// Sampling estimate of reliability(): per trial, each segment fails with its
/// survival complement and each rejuvenation draws two migration outcomes.
/// Deterministic for a given seed.
MonteCarloEstimate monte_carlo_reliability(const HazardModel& model, const SystemParams& params,
                                           double longevity, double period, std::uint64_t trials,
                                           std::uint64_t seed);

}  // namespace rejuv

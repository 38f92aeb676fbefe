#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rejuv/config.hpp"
#include "rejuv/optimizer.hpp"
#include "rejuv/task.hpp"

namespace rejuv {

struct CurvePoint {
  double parameter = 0.0;  ///< L for the reliability curve, rho otherwise
  double period = 0.0;
  double value = 0.0;
};

std::vector<CurvePoint> reliability_curve(const ExperimentConfig& config);
std::vector<CurvePoint> longevity_curve(const ExperimentConfig& config);
/// Availability per grid period, zeroed where the reliability floor fails.
std::vector<CurvePoint> availability_curve(const ExperimentConfig& config);

struct MaxAvaPoint {
  double rho = 0.0;
  double period = kMaxAvaFailure;
  double availability = 0.0;

  bool feasible() const noexcept { return period > 0.0; }
};

/// One MAX-AVA run per rho at the first configured longevity.
std::vector<MaxAvaPoint> max_ava_points(const ExperimentConfig& config);

/// One generated task set scheduled three ways.
struct DelayTrial {
  double x = 0.0;  ///< utilization or rejuvenation cost
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  double realized_utilization = 0.0;
  Tick hyperperiod = 0;
  Tick edf_delay = 0;
  Tick lrt_delay = 0;
  Tick min_delay = 0;
  std::size_t edf_rejuvenations = 0;
  std::size_t min_rejuvenations = 0;
  std::size_t deadline_misses = 0;  ///< over all three schedules, independently verified
};

struct DelayRow {
  double x = 0.0;
  double edf = 0.0;
  double lrt = 0.0;
  double min = 0.0;
};

struct DelayExperiment {
  std::vector<DelayRow> rows;
  std::vector<DelayTrial> trials;  ///< ordered by x, then trial index
};

/// Runs delay_vs_utilization or delay_vs_rejuvenation_cost. Trial seeds derive
/// from (seed, x index, trial index) so results do not depend on `threads`.
DelayExperiment run_delay_experiment(const ExperimentConfig& config, unsigned threads = 0);

void write_reliability_csv(std::ostream& out, const std::vector<CurvePoint>& points);
void write_longevity_csv(std::ostream& out, const std::vector<CurvePoint>& points);
void write_availability_csv(std::ostream& out, const std::vector<CurvePoint>& points,
                            const std::vector<MaxAvaPoint>& optimum);
void write_max_ava_csv(std::ostream& out, const std::vector<MaxAvaPoint>& points);
void write_delay_csv(std::ostream& out, const DelayExperiment& experiment);
void write_delay_trials_csv(std::ostream& out, const DelayExperiment& experiment);

/// Schedules config.taskset_path with config.algorithm (edf, lrt or min-delay)
/// and writes the trace CSV.
void run_schedule_trace(const ExperimentConfig& config, std::ostream& out);

/// Formats a double with 6 significant digits.
std::string format_number(double value);

}  // namespace rejuv

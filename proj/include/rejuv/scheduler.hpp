#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rejuv/hazard.hpp"
#include "rejuv/system.hpp"
#include "rejuv/task.hpp"
#include "rejuv/timeline.hpp"

namespace rejuv {

/// Preemptive EDF over `window`. Jobs released in the window whose deadline is
/// within it are scheduled; ties go to the lower task index, then the earlier
/// release. `rejuvenations` are recorded on the timeline for delay accounting
/// and do not block execution. Throws UnschedulableError when U > 1.
Timeline edf_schedule(const TaskSet& tasks, Interval window,
                      std::span<const Interval> rejuvenations = {});

/// Latest Release Time: EDF run backwards from window.end with releases and
/// deadlines swapped, which pushes idle time toward window.start. Both ends
/// must be multiples of the hyperperiod (AlignmentError otherwise).
Timeline lrt_schedule(const TaskSet& tasks, Interval window);

/// Which idle run MIN-DELAY moves a rejuvenation onto when several start
/// inside its shift window.
enum class IdleChoice {
  latest,    ///< the last idle run before the nominal start
  earliest,  ///< the first idle run in the window
};

std::string_view to_string(IdleChoice choice);

struct MinDelayParams {
  Tick rejuvenation_period = 0;  ///< T_r
  Tick rejuvenation_cost = 0;    ///< E_r
  Tick longevity = 0;            ///< L, the scheduling horizon
  HazardModel model = HazardModel::none();
  SystemParams system;           ///< rho and friends for the reliability check
  double reliability_floor = 0.0;
  /// Minimal reliable period T_0. Derived from the model when unset.
  std::optional<Tick> min_reliable_period;
  IdleChoice idle_choice = IdleChoice::latest;
};

struct MinDelayResult {
  Timeline timeline;
  DelayReport delay;
  Tick min_reliable_period = 0;  ///< T_0
  Tick min_count_period = 0;     ///< T_min
  Tick shift_floor = 0;          ///< T = max(T_min, T_0)
};

/// MIN-DELAY: before each nominal rejuvenation start, move it back onto EDF
/// idle time (never closer than T to the previous window), run EDF up to the
/// chosen start and LRT for the jobs released from there up to the next
/// hyperperiod boundary that clears the rejuvenation, then continue. Never
/// places more windows than nominal_rejuvenations() would.
///
/// Throws InfeasibleError when no period meets the reliability floor and
/// UnschedulableError when U > 1.
MinDelayResult min_delay_schedule(const TaskSet& tasks, const MinDelayParams& params);

/// Windows at T_r, then every E_r + T_r, clipped to [0, L).
std::vector<Interval> nominal_rejuvenations(Tick period, Tick cost, Tick longevity);

struct BaselineResult {
  Timeline timeline;
  DelayReport delay;
};

/// EDF over [0, L) with rejuvenations at their nominal times.
BaselineResult edf_baseline(const TaskSet& tasks, Tick period, Tick cost, Tick longevity);

/// LRT over [0, L) (backwards from L, jobs with deadline <= L) with nominal rejuvenations.
BaselineResult lrt_baseline(const TaskSet& tasks, Tick period, Tick cost, Tick longevity);

}  // namespace rejuv

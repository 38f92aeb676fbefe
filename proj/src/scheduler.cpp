#include "rejuv/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "rejuv/error.hpp"
#include "rejuv/optimizer.hpp"

namespace rejuv {
namespace {

constexpr Tick kNever = std::numeric_limits<Tick>::max();

/// Unfinished job handed from an EDF stretch to the LRT block that follows it.
struct ResidualJob {
  std::int32_t task = -1;
  std::int64_t instance = 0;
  Tick deadline = 0;
  Tick remaining = 0;
};

/// Forward EDF over the jobs with release < release_limit and
/// deadline <= deadline_limit, starting from an empty processor at `start`.
/// Copyable, so callers can probe ahead and roll back.
class EdfEngine {
 public:
  EdfEngine(const TaskSet& tasks, Tick start, Tick release_limit, Tick deadline_limit)
      : tasks_(&tasks),
        time_(start),
        release_limit_(release_limit),
        deadline_limit_(deadline_limit),
        next_(tasks.size()),
        pending_(tasks.size()) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const Tick period = tasks[i].period;
      next_[i] = (start + period - 1) / period;
    }
  }

  Tick time() const noexcept { return time_; }
  std::size_t misses() const noexcept { return misses_; }

  void run_until(Tick stop, Timeline& out) {
    const std::size_t n = tasks_->size();
    while (time_ < stop) {
      for (std::size_t i = 0; i < n; ++i) {
        Pending& p = pending_[i];
        if (p.active && p.deadline <= time_) {
          ++misses_;
          p.active = false;
        }
        const Tick release = next_release(i);
        if (release <= time_) {
          const Tick period = (*tasks_)[i].period;
          p = Pending{true, next_[i], release + period, (*tasks_)[i].wcet};
          ++next_[i];
        }
      }

      std::size_t best = n;
      Tick next_event = stop;
      for (std::size_t i = 0; i < n; ++i) {
        next_event = std::min(next_event, next_release(i));
        const Pending& p = pending_[i];
        if (!p.active) continue;
        next_event = std::min(next_event, p.deadline);
        // Equal deadlines keep the lower index; at most one job per task is pending.
        if (best == n || p.deadline < pending_[best].deadline) best = i;
      }

      if (best == n) {
        out.append_idle(next_event);
        time_ = next_event;
        continue;
      }
      Pending& job = pending_[best];
      const Tick until = std::min(next_event, time_ + job.remaining);
      out.append_exec(until, static_cast<std::int32_t>(best), job.instance);
      job.remaining -= until - time_;
      if (job.remaining == 0) job.active = false;
      time_ = until;
    }
  }

  std::vector<ResidualJob> residual() const {
    std::vector<ResidualJob> jobs;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      const Pending& p = pending_[i];
      if (p.active && p.remaining > 0) {
        jobs.push_back({static_cast<std::int32_t>(i), p.instance, p.deadline, p.remaining});
      }
    }
    return jobs;
  }

 private:
  struct Pending {
    bool active = false;
    std::int64_t instance = 0;
    Tick deadline = 0;
    Tick remaining = 0;
  };

  Tick next_release(std::size_t i) const {
    const Tick period = (*tasks_)[i].period;
    const Tick release = next_[i] * period;
    if (release >= release_limit_ || release + period > deadline_limit_) return kNever;
    return release;
  }

  const TaskSet* tasks_;
  Tick time_;
  Tick release_limit_;
  Tick deadline_limit_;
  std::vector<std::int64_t> next_;
  std::vector<Pending> pending_;
  std::size_t misses_ = 0;
};

/// Backward EDF over [block_start, block_end): every job released in the block
/// with deadline <= block_end, plus `residual` work treated as released at
/// block_start. Appends to `out`, whose cursor must be block_start.
std::size_t lrt_fill(const TaskSet& tasks, Tick block_start, Tick block_end,
                     std::span<const ResidualJob> residual, Timeline& out) {
  struct Job {
    std::int32_t task;
    std::int64_t instance;
    Tick release;
    Tick deadline;
    Tick remaining;
  };
  std::vector<Job> jobs;
  for (const ResidualJob& r : residual) {
    jobs.push_back({r.task, r.instance, block_start, std::min(r.deadline, block_end), r.remaining});
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& task = tasks[i];
    for (std::int64_t j = (block_start + task.period - 1) / task.period;
         (j + 1) * task.period <= block_end; ++j) {
      jobs.push_back({static_cast<std::int32_t>(i), j, j * task.period, (j + 1) * task.period,
                      task.wcet});
    }
  }
  // Latest deadline first: the order in which jobs become available going backwards.
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.deadline != b.deadline) return a.deadline > b.deadline;
    return a.task < b.task;
  });

  // Reversed-time EDF priority: latest release, then lower task index, then later deadline.
  const auto lower_priority = [&jobs](std::size_t a, std::size_t b) {
    const Job& x = jobs[a];
    const Job& y = jobs[b];
    if (x.release != y.release) return x.release < y.release;
    if (x.task != y.task) return x.task > y.task;
    return x.deadline < y.deadline;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(lower_priority)> ready(
      lower_priority);

  std::vector<Segment> backwards;
  std::size_t misses = 0;
  std::size_t next = 0;
  Tick s = block_end;
  while (s > block_start) {
    while (next < jobs.size() && jobs[next].deadline >= s) ready.push(next++);
    while (!ready.empty() && jobs[ready.top()].release >= s) {
      ++misses;
      ready.pop();
    }
    const Tick arrival = next < jobs.size() ? std::max(jobs[next].deadline, block_start) : block_start;
    if (ready.empty()) {
      backwards.push_back({arrival, s, SegmentKind::idle, -1, -1});
      s = arrival;
      continue;
    }
    Job& job = jobs[ready.top()];
    const Tick from = std::max({arrival, s - job.remaining, job.release});
    backwards.push_back({from, s, SegmentKind::exec, job.task, job.instance});
    job.remaining -= s - from;
    if (job.remaining == 0) ready.pop();
    s = from;
  }
  while (!ready.empty()) {
    if (jobs[ready.top()].remaining > 0) ++misses;
    ready.pop();
  }
  misses += static_cast<std::size_t>(std::count_if(
      jobs.begin() + static_cast<std::ptrdiff_t>(next), jobs.end(), [](const Job& j) { return j.remaining > 0; }));

  std::reverse(backwards.begin(), backwards.end());
  out.append(backwards);
  return misses;
}

void require_feasible(const TaskSet& tasks) {
  if (!tasks.feasible()) {
    throw UnschedulableError("task set utilization " + std::to_string(tasks.utilization()) +
                             " exceeds 1");
  }
}

void require_no_misses(std::size_t misses, const char* what) {
  if (misses > 0) {
    throw UnschedulableError(std::string(what) + " missed " + std::to_string(misses) +
                             " deadline(s)");
  }
}

}  // namespace

Timeline edf_schedule(const TaskSet& tasks, Interval window,
                      std::span<const Interval> rejuvenations) {
  require_feasible(tasks);
  if (window.end < window.start) throw DomainError("window end precedes its start");
  Timeline timeline(window.start, window.end);
  EdfEngine engine(tasks, window.start, window.end, window.end);
  engine.run_until(window.end, timeline);
  require_no_misses(engine.misses(), "EDF");
  timeline.set_rejuvenations({rejuvenations.begin(), rejuvenations.end()});
  return timeline;
}

Timeline lrt_schedule(const TaskSet& tasks, Interval window) {
  require_feasible(tasks);
  const Tick h = tasks.hyperperiod();
  if (window.end < window.start || window.start % h != 0 || window.end % h != 0) {
    throw AlignmentError("LRT window [" + std::to_string(window.start) + ", " +
                         std::to_string(window.end) + ") is not aligned to the hyperperiod " +
                         std::to_string(h));
  }
  Timeline timeline(window.start, window.end);
  require_no_misses(lrt_fill(tasks, window.start, window.end, {}, timeline), "LRT");
  return timeline;
}

std::string_view to_string(IdleChoice choice) {
  return choice == IdleChoice::latest ? "latest" : "earliest";
}

std::vector<Interval> nominal_rejuvenations(Tick period, Tick cost, Tick longevity) {
  if (period <= 0 || cost < 0) throw DomainError("rejuvenation needs T_r > 0 and E_r >= 0");
  std::vector<Interval> windows;
  for (Tick t = period; t < longevity; t += cost + period) {
    windows.push_back({t, std::min(t + cost, longevity)});
  }
  return windows;
}

BaselineResult edf_baseline(const TaskSet& tasks, Tick period, Tick cost, Tick longevity) {
  BaselineResult result;
  result.timeline = edf_schedule(tasks, {0, longevity}, nominal_rejuvenations(period, cost, longevity));
  result.delay = delay_of(result.timeline, result.timeline.rejuvenations());
  return result;
}

BaselineResult lrt_baseline(const TaskSet& tasks, Tick period, Tick cost, Tick longevity) {
  require_feasible(tasks);
  BaselineResult result;
  result.timeline = Timeline(0, longevity);
  require_no_misses(lrt_fill(tasks, 0, longevity, {}, result.timeline), "LRT");
  result.timeline.set_rejuvenations(nominal_rejuvenations(period, cost, longevity));
  result.delay = delay_of(result.timeline, result.timeline.rejuvenations());
  return result;
}

MinDelayResult min_delay_schedule(const TaskSet& tasks, const MinDelayParams& params) {
  const Tick period = params.rejuvenation_period;
  const Tick cost = params.rejuvenation_cost;
  const Tick horizon = params.longevity;
  if (!(cost > 0 && cost < period && period <= horizon)) {
    throw DomainError("MIN-DELAY needs 0 < E_r < T_r <= L");
  }
  require_feasible(tasks);

  MinDelayResult result;
  if (params.min_reliable_period) {
    result.min_reliable_period = *params.min_reliable_period;
  } else {
    const double t0 = min_period_for_reliability(params.model, params.system,
                                                 static_cast<double>(horizon),
                                                 params.reliability_floor, 1.0);
    result.min_reliable_period = static_cast<Tick>(std::ceil(t0));
  }
  result.min_count_period = t_min(horizon, period);
  result.shift_floor = std::max(result.min_count_period, result.min_reliable_period);
  const Tick max_shift = std::max<Tick>(0, period - result.shift_floor);

  const Tick h = tasks.hyperperiod();
  const Tick blocks = cost / h + 2;
  Timeline& timeline = result.timeline;
  timeline = Timeline(0, horizon);
  std::size_t misses = 0;

  // Shifting windows earlier must not let an extra one fit before L.
  const std::size_t window_cap = nominal_rejuvenations(period, cost, horizon).size();

  Tick edf_from = 0;  // t_1: end of the last LRT block, always hyperperiod aligned or == L
  Tick start = period;
  while (horizon > start && timeline.rejuvenations().size() < window_cap) {
    Tick lrt_from = edf_from;
    std::vector<ResidualJob> residual;
    if (start > edf_from) {
      EdfEngine engine(tasks, edf_from, horizon, horizon);
      const Tick window_from = std::max(start - max_shift, edf_from);
      engine.run_until(window_from, timeline);
      if (window_from < start) {
        EdfEngine probe = engine;
        Timeline scratch(window_from, start);
        probe.run_until(start, scratch);
        const auto idle = scratch.idle_intervals({window_from, start});
        if (!idle.empty()) {
          start = params.idle_choice == IdleChoice::latest ? idle.back().start : idle.front().start;
        }
        engine.run_until(start, timeline);
      }
      misses += engine.misses();
      residual = engine.residual();
      lrt_from = start;
    }

    Tick block_end = 0;
    if (__builtin_mul_overflow(blocks, h, &block_end) ||
        __builtin_add_overflow(block_end, (start / h) * h, &block_end)) {
      block_end = horizon;
    }
    block_end = std::min(block_end, horizon);
    if (block_end > lrt_from) {
      misses += lrt_fill(tasks, lrt_from, block_end, residual, timeline);
      edf_from = block_end;
    }
    timeline.add_rejuvenation({start, std::min(start + cost, horizon)});
    start += cost + period;
  }
  if (edf_from < horizon) {
    EdfEngine engine(tasks, edf_from, horizon, horizon);
    engine.run_until(horizon, timeline);
    misses += engine.misses();
  }
  require_no_misses(misses, "MIN-DELAY");
  result.delay = delay_of(timeline, timeline.rejuvenations());
  return result;
}

}  // namespace rejuv

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rejuv {

using Tick = std::int64_t;

/// Periodic task with implicit deadline (deadline == period).
struct Task {
  Tick period = 1;
  Tick wcet = 1;

  friend bool operator==(const Task&, const Task&) = default;
};

/// LCM of the periods. Throws OverflowError if it does not fit in a Tick,
/// DomainError for an empty set or a non-positive period.
Tick hyperperiod(std::span<const Task> tasks);

/// Synchronous periodic task set, all tasks released at time 0.
class TaskSet {
 public:
  /// Validates 1 <= C_i <= T_i and computes the hyperperiod.
  explicit TaskSet(std::vector<Task> tasks);

  std::span<const Task> tasks() const noexcept { return tasks_; }
  const Task& operator[](std::size_t i) const { return tasks_[i]; }
  std::size_t size() const noexcept { return tasks_.size(); }
  Tick hyperperiod() const noexcept { return hyperperiod_; }

  /// Sum of C_i * H / T_i: executed ticks per hyperperiod.
  Tick demand_per_hyperperiod() const noexcept { return demand_; }
  double utilization() const noexcept;
  /// Exact integer test of U <= 1.
  bool feasible() const noexcept { return demand_ <= hyperperiod_; }

  friend bool operator==(const TaskSet& a, const TaskSet& b) { return a.tasks_ == b.tasks_; }

 private:
  std::vector<Task> tasks_;
  Tick hyperperiod_ = 1;
  Tick demand_ = 0;
};

/// Plain-text task set: one `period,wcet` pair per line; blank lines and
/// lines starting with '#' are skipped. Throws ParseError with the line number.
TaskSet parse_taskset(std::istream& in);
TaskSet load_taskset(const std::string& path);
void write_taskset(std::ostream& out, const TaskSet& tasks);

}  // namespace rejuv

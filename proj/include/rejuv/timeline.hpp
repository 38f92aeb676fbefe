#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rejuv/task.hpp"

namespace rejuv {

/// Half-open tick interval [start, end).
struct Interval {
  Tick start = 0;
  Tick end = 0;

  Tick length() const noexcept { return end - start; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class SegmentKind : std::uint8_t { exec, idle };

/// A run of the main processor: one job executing, or idle.
struct Segment {
  Tick start = 0;
  Tick end = 0;
  SegmentKind kind = SegmentKind::idle;
  std::int32_t task = -1;    ///< index into the task set, exec only
  std::int64_t job = -1;     ///< instance number (release = job * period), exec only

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Executed schedule over [start, end).
///
/// Segments are contiguous and cover the horizon. Rejuvenation windows are
/// kept alongside as annotations: while the main unit rejuvenates, exec
/// segments inside a window run on the backup unit.
class Timeline {
 public:
  Timeline() = default;
  Timeline(Tick start, Tick end) : start_(start), end_(end), cursor_(start) {}

  Tick start() const noexcept { return start_; }
  Tick end() const noexcept { return end_; }
  /// End of the last appended segment.
  Tick cursor() const noexcept { return cursor_; }

  /// Appends [cursor, end) as exec or idle. Adjacent runs of the same job, or
  /// of idle time, are merged.
  void append_exec(Tick end, std::int32_t task, std::int64_t job);
  void append_idle(Tick end);
  /// Appends already-ordered segments starting at cursor().
  void append(std::span<const Segment> segments);

  std::span<const Segment> segments() const noexcept { return segments_; }
  std::span<const Interval> rejuvenations() const noexcept { return rejuvenations_; }
  void add_rejuvenation(Interval window) { rejuvenations_.push_back(window); }
  void set_rejuvenations(std::vector<Interval> windows) { rejuvenations_ = std::move(windows); }

  /// Exec ticks within `window`.
  Tick busy_ticks(Interval window) const;
  /// Maximal idle runs clipped to `window`, in increasing order.
  std::vector<Interval> idle_intervals(Interval window) const;

 private:
  void push(Segment s);

  Tick start_ = 0;
  Tick end_ = 0;
  Tick cursor_ = 0;
  std::vector<Segment> segments_;
  std::vector<Interval> rejuvenations_;
};

std::vector<Interval> idle_intervals(const Timeline& timeline, Interval window);

/// Delay charged to the backup unit's non-real-time work.
struct DelayReport {
  struct Entry {
    Interval window;
    Tick busy = 0;
  };
  std::vector<Entry> entries;
  Tick total = 0;

  std::size_t count() const noexcept { return entries.size(); }
};

/// Busy ticks inside each rejuvenation window, summed.
DelayReport delay_of(const Timeline& timeline, std::span<const Interval> rejuvenations);

/// One late or under-served job found by verify_schedule.
struct DeadlineMiss {
  std::int32_t task = -1;
  std::int64_t job = -1;
  Tick executed = 0;
  bool outside_window = false;   ///< ran before its release or after its deadline
};

/// Independent check that every job released at or after timeline.start()
/// with deadline <= timeline.end() receives exactly C_i ticks inside
/// [release, deadline), and that no exec segment runs outside its job's window.
std::vector<DeadlineMiss> verify_schedule(const TaskSet& tasks, const Timeline& timeline);

/// CSV trace with header `start,end,kind,task,job`; kind is EXEC, IDLE or
/// REJUV and the task/job columns are empty except for EXEC rows. Rows are
/// ordered by start; a REJUV row precedes segments starting at the same tick.
void write_trace_csv(std::ostream& out, const Timeline& timeline);

}  // namespace rejuv

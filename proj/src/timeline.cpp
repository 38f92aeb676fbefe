#include "rejuv/timeline.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "rejuv/error.hpp"

namespace rejuv {

void Timeline::push(Segment s) {
  if (s.end <= s.start) return;
  if (s.start != cursor_) throw Error("timeline segments must be contiguous");
  if (!segments_.empty()) {
    Segment& back = segments_.back();
    if (back.kind == s.kind && back.task == s.task && back.job == s.job) {
      back.end = s.end;
      cursor_ = s.end;
      return;
    }
  }
  segments_.push_back(s);
  cursor_ = s.end;
}

void Timeline::append_exec(Tick end, std::int32_t task, std::int64_t job) {
  push(Segment{cursor_, end, SegmentKind::exec, task, job});
}

void Timeline::append_idle(Tick end) { push(Segment{cursor_, end, SegmentKind::idle, -1, -1}); }

void Timeline::append(std::span<const Segment> segments) {
  for (const Segment& s : segments) push(s);
}

Tick Timeline::busy_ticks(Interval window) const {
  Tick busy = 0;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), window.start,
                             [](Tick t, const Segment& s) { return t < s.end; });
  for (; it != segments_.end() && it->start < window.end; ++it) {
    if (it->kind != SegmentKind::exec) continue;
    busy += std::min(it->end, window.end) - std::max(it->start, window.start);
  }
  return busy;
}

std::vector<Interval> Timeline::idle_intervals(Interval window) const {
  std::vector<Interval> idle;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), window.start,
                             [](Tick t, const Segment& s) { return t < s.end; });
  for (; it != segments_.end() && it->start < window.end; ++it) {
    if (it->kind != SegmentKind::idle) continue;
    idle.push_back({std::max(it->start, window.start), std::min(it->end, window.end)});
  }
  return idle;
}

std::vector<Interval> idle_intervals(const Timeline& timeline, Interval window) {
  return timeline.idle_intervals(window);
}

DelayReport delay_of(const Timeline& timeline, std::span<const Interval> rejuvenations) {
  DelayReport report;
  for (const Interval& w : rejuvenations) {
    const Tick busy = timeline.busy_ticks(w);
    report.entries.push_back({w, busy});
    report.total += busy;
  }
  return report;
}

std::vector<DeadlineMiss> verify_schedule(const TaskSet& tasks, const Timeline& timeline) {
  const Tick start = timeline.start();
  const Tick end = timeline.end();
  struct Ledger {
    std::int64_t first = 0;
    std::vector<Tick> executed;
  };
  std::vector<Ledger> ledgers(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Tick period = tasks[i].period;
    ledgers[i].first = (start + period - 1) / period;
    const std::int64_t last = end / period;  // instances released before end
    ledgers[i].executed.assign(static_cast<std::size_t>(std::max<std::int64_t>(0, last - ledgers[i].first + 1)), 0);
  }

  std::vector<DeadlineMiss> misses;
  for (const Segment& s : timeline.segments()) {
    if (s.kind != SegmentKind::exec) continue;
    if (s.task < 0 || static_cast<std::size_t>(s.task) >= tasks.size()) {
      misses.push_back({s.task, s.job, s.end - s.start, true});
      continue;
    }
    const Tick period = tasks[static_cast<std::size_t>(s.task)].period;
    const Tick release = s.job * period;
    Ledger& ledger = ledgers[static_cast<std::size_t>(s.task)];
    const std::int64_t slot = s.job - ledger.first;
    if (s.start < release || s.end > release + period || release + period > end || slot < 0 ||
        slot >= static_cast<std::int64_t>(ledger.executed.size())) {
      misses.push_back({s.task, s.job, s.end - s.start, true});
      continue;
    }
    ledger.executed[static_cast<std::size_t>(slot)] += s.end - s.start;
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& task = tasks[i];
    const Ledger& ledger = ledgers[i];
    for (std::size_t slot = 0; slot < ledger.executed.size(); ++slot) {
      const std::int64_t job = ledger.first + static_cast<std::int64_t>(slot);
      if ((job + 1) * task.period > end) continue;  // deadline beyond the horizon
      if (ledger.executed[slot] != task.wcet) {
        misses.push_back({static_cast<std::int32_t>(i), job, ledger.executed[slot], false});
      }
    }
  }
  return misses;
}

void write_trace_csv(std::ostream& out, const Timeline& timeline) {
  out << "start,end,kind,task,job\n";
  const auto segments = timeline.segments();
  std::vector<Interval> rejuvenations(timeline.rejuvenations().begin(),
                                      timeline.rejuvenations().end());
  std::stable_sort(rejuvenations.begin(), rejuvenations.end(),
                   [](const Interval& a, const Interval& b) { return a.start < b.start; });
  std::size_t r = 0;
  for (const Segment& s : segments) {
    while (r < rejuvenations.size() && rejuvenations[r].start <= s.start) {
      out << rejuvenations[r].start << ',' << rejuvenations[r].end << ",REJUV,,\n";
      ++r;
    }
    if (s.kind == SegmentKind::exec) {
      out << s.start << ',' << s.end << ",EXEC," << s.task << ',' << s.job << '\n';
    } else {
      out << s.start << ',' << s.end << ",IDLE,,\n";
    }
  }
  for (; r < rejuvenations.size(); ++r) {
    out << rejuvenations[r].start << ',' << rejuvenations[r].end << ",REJUV,,\n";
  }
}

}  // namespace rejuv

#include "rejuv/task.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "rejuv/error.hpp"

namespace rejuv {

Tick hyperperiod(std::span<const Task> tasks) {
  if (tasks.empty()) throw DomainError("hyperperiod of an empty task set");
  Tick h = 1;
  for (const Task& t : tasks) {
    if (t.period <= 0) throw DomainError("task period must be positive");
    const Tick g = std::gcd(h, t.period);
    Tick next = 0;
    if (__builtin_mul_overflow(h / g, t.period, &next)) {
      throw OverflowError("hyperperiod overflows a 64-bit tick count");
    }
    h = next;
  }
  return h;
}

TaskSet::TaskSet(std::vector<Task> tasks) : tasks_(std::move(tasks)) {
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    const Task& t = tasks_[i];
    if (t.period <= 0 || t.wcet <= 0 || t.wcet > t.period) {
      throw DomainError("task " + std::to_string(i) + " needs 1 <= wcet <= period, got (" +
                        std::to_string(t.period) + "," + std::to_string(t.wcet) + ")");
    }
  }
  hyperperiod_ = rejuv::hyperperiod(tasks_);
  for (const Task& t : tasks_) {
    Tick share = 0;
    if (__builtin_mul_overflow(hyperperiod_ / t.period, t.wcet, &share) ||
        __builtin_add_overflow(demand_, share, &demand_)) {
      throw OverflowError("hyperperiod demand overflows a 64-bit tick count");
    }
  }
}

double TaskSet::utilization() const noexcept {
  double u = 0.0;
  for (const Task& t : tasks_) u += static_cast<double>(t.wcet) / static_cast<double>(t.period);
  return u;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Tick parse_tick(std::string_view text, int line) {
  text = trim(text);
  if (text.empty()) throw ParseError("missing integer", line);
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(std::string(text), &used);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + std::string(text) + "'", line);
  }
  if (used != text.size()) throw ParseError("not an integer: '" + std::string(text) + "'", line);
  return value;
}

}  // namespace

TaskSet parse_taskset(std::istream& in) {
  std::vector<Task> tasks;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected 'period,wcet'", line);
    Task task{parse_tick(text.substr(0, comma), line), parse_tick(text.substr(comma + 1), line)};
    if (task.period <= 0 || task.wcet <= 0 || task.wcet > task.period) {
      throw ParseError("task needs 1 <= wcet <= period", line);
    }
    tasks.push_back(task);
  }
  if (tasks.empty()) throw ParseError("task set file has no tasks");
  return TaskSet(std::move(tasks));
}

TaskSet load_taskset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open task set file '" + path + "'");
  try {
    return parse_taskset(in);
  } catch (const ParseError& e) {
    throw e.prefixed(path + ": ");
  }
}

void write_taskset(std::ostream& out, const TaskSet& tasks) {
  for (const Task& t : tasks.tasks()) out << t.period << ',' << t.wcet << '\n';
}

}  // namespace rejuv

#include "rejuv/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "rejuv/error.hpp"
#include "rejuv/random.hpp"

namespace rejuv {
namespace {

void check_target(std::size_t n, double total) {
  if (n == 0) throw DomainError("task count must be at least 1");
  if (!(total > 0.0 && total <= 1.0)) throw DomainError("target utilization must lie in (0, 1]");
}

std::vector<double> uunifast_draw(std::size_t n, double total, Rng& rng) {
  std::vector<double> utils(n);
  double remaining = total;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double next =
        remaining * std::pow(unit_uniform(rng), 1.0 / static_cast<double>(n - i - 1));
    utils[i] = remaining - next;
    remaining = next;
  }
  utils[n - 1] = remaining;
  return utils;
}

// One realization attempt; nullopt when the rounded set is rejected.
std::optional<TaskSet> realize_once(std::span<const double> utils, Rng& rng,
                                    std::span<const Tick> pool, bool any, Tick lo, Tick hi,
                                    bool require_full) {
  std::vector<Task> tasks;
  tasks.reserve(utils.size());
  for (double u : utils) {
    const Tick period = any ? lo + static_cast<Tick>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)))
                            : pool[uniform_index(rng, pool.size())];
    const double scaled = std::round(u * static_cast<double>(period));
    const Tick wcet = std::clamp<Tick>(static_cast<Tick>(scaled), 1, period);
    tasks.push_back({period, wcet});
  }
  TaskSet set(std::move(tasks));
  if (!set.feasible()) return std::nullopt;
  if (require_full && set.demand_per_hyperperiod() != set.hyperperiod()) return std::nullopt;
  return set;
}

}  // namespace

std::vector<double> uunifast(std::size_t n, double total, std::uint64_t seed) {
  check_target(n, total);
  Rng rng(seed);
  return uunifast_draw(n, total, rng);
}

GeneratedTaskSet realize_taskset(std::span<const double> utilizations,
                                 std::span<const Tick> pool, std::uint64_t seed, int retry_cap) {
  if (utilizations.empty()) throw DomainError("no utilizations to realize");
  if (pool.empty()) throw DomainError("period pool is empty");
  for (Tick p : pool) {
    if (p <= 0) throw DomainError("period pool entries must be positive");
  }
  double target = 0.0;
  for (double u : utilizations) target += u;
  for (int attempt = 0; attempt <= retry_cap; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (auto set = realize_once(utilizations, rng, pool, false, 0, 0, false)) {
      const double realized = set->utilization();
      return GeneratedTaskSet{std::move(*set), target, realized, attempt + 1};
    }
  }
  throw GenerationError("no schedulable realization after " + std::to_string(retry_cap) +
                        " retries");
}

GeneratedTaskSet generate_taskset(const GenSpec& spec) {
  check_target(spec.task_count, spec.target_utilization);
  if (spec.periods_any) {
    if (spec.period_min <= 0 || spec.period_max < spec.period_min) {
      throw DomainError("period range must satisfy 0 < min <= max");
    }
  } else if (spec.period_pool.empty()) {
    throw DomainError("period pool is empty");
  }
  const bool require_full = spec.exact_full_utilization && spec.target_utilization == 1.0;
  for (int attempt = 0; attempt <= spec.retry_cap; ++attempt) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
    const auto utils = uunifast_draw(spec.task_count, spec.target_utilization, rng);
    if (auto set = realize_once(utils, rng, spec.period_pool, spec.periods_any, spec.period_min,
                                spec.period_max, require_full)) {
      const double realized = set->utilization();
      return GeneratedTaskSet{std::move(*set), spec.target_utilization, realized, attempt + 1};
    }
  }
  throw GenerationError("no acceptable task set after " + std::to_string(spec.retry_cap) +
                        " retries at utilization " + std::to_string(spec.target_utilization));
}

}  // namespace rejuv

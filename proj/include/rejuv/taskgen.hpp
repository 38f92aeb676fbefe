#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rejuv/task.hpp"

namespace rejuv {

/// Periods in [10, 20] whose LCM stays at 240.
inline const std::vector<Tick> kDivisorFriendlyPeriods{10, 12, 15, 16, 20};

struct GenSpec {
  std::size_t task_count = 5;
  double target_utilization = 0.5;
  std::vector<Tick> period_pool = kDivisorFriendlyPeriods;
  /// Draw periods uniformly from [period_min, period_max] instead of the pool.
  bool periods_any = false;
  Tick period_min = 10;
  Tick period_max = 20;
  std::uint64_t seed = 0;
  int retry_cap = 1000;
  /// At a target of exactly 1, only accept sets whose realized utilization is
  /// exactly 1 (rounding would otherwise leave slack).
  bool exact_full_utilization = true;
};

/// UUniFast: n utilizations uniform on the simplex summing to `total`.
std::vector<double> uunifast(std::size_t n, double total, std::uint64_t seed);

struct GeneratedTaskSet {
  TaskSet tasks;
  double target_utilization = 0.0;
  double realized_utilization = 0.0;
  int attempts = 0;
};

/// Draws a period per utilization from `pool` and sets C_i = round(u_i T_i)
/// clamped to [1, T_i]. A draw whose realized utilization exceeds 1 is
/// rejected and redrawn from the next derived seed; throws GenerationError
/// after `retry_cap` rejections.
GeneratedTaskSet realize_taskset(std::span<const double> utilizations,
                                 std::span<const Tick> pool, std::uint64_t seed,
                                 int retry_cap = 1000);

/// uunifast + realize; each rejection redraws utilizations and periods.
GeneratedTaskSet generate_taskset(const GenSpec& spec);

}  // namespace rejuv

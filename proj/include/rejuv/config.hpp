#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rejuv/hazard.hpp"
#include "rejuv/task.hpp"

namespace rejuv {

enum class ExperimentKind {
  reliability_curve,
  longevity_curve,
  availability_curve,
  max_ava,
  delay_vs_utilization,
  delay_vs_rejuvenation_cost,
  schedule_trace,
};

std::string_view to_string(ExperimentKind kind);
/// Accepts the enum spelling or the CLI subcommand spelling.
std::optional<ExperimentKind> parse_experiment_kind(std::string_view text);

/// Every knob of every experiment. `defaults(kind)` fills in the settings the
/// reference study used for that experiment; the text form is a flat
/// `key=value` file (lists are comma separated, `#` starts a comment).
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::reliability_curve;

  // Aging model; hazard is "weibull" or "none".
  std::string hazard = "weibull";
  double weibull_shape = 3.0;
  double weibull_scale = 1000.0;

  // Analytic curves.
  std::vector<double> rho{0.99999};
  std::vector<double> longevity{100.0, 1000.0};
  std::vector<double> periods;  ///< rejuvenation period grid
  double reliability_floor = 0.9997;
  double rejuvenation_cost = 0.5;
  double longevity_step = 1.0;
  double longevity_cap = 1e6;

  // Scheduling experiments, in ticks.
  std::int64_t task_count = 5;
  std::vector<Tick> period_pool;
  bool periods_any = false;
  Tick period_min = 10;
  Tick period_max = 20;
  std::vector<double> utilizations;
  double fixed_utilization = 0.6;
  std::int64_t trials = 100;
  Tick sched_longevity = 10'000'000;
  Tick sched_period = 2'000'000;
  Tick min_period = 1'900'000;  ///< T_0; 0 derives it from the hazard model
  Tick sched_cost = 100'000;
  std::vector<Tick> sched_costs;
  std::string idle_choice = "latest";

  // Trace.
  std::string taskset_path;
  std::string algorithm = "min-delay";

  std::uint64_t seed = 1;
  std::int64_t scale = 1;
  std::string out;
  std::string raw_out;

  static ExperimentConfig defaults(ExperimentKind kind);

  HazardModel hazard_model() const;

  /// Divides every scheduling duration (L, T_r, T_0, E_r and the E_r sweep) by
  /// `scale`, then resets scale to 1. Throws DomainError when a value would
  /// not divide evenly.
  void apply_scale();

  /// Sets one key. Throws ParseError for an unknown key or a bad value.
  void set(std::string_view key, std::string_view value);

  /// key=value lines, every key, in a fixed order.
  std::string to_text() const;
  /// Applies the lines of `text` on top of *this.
  void merge_text(std::string_view text);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Reads `path` on top of defaults for the kind named inside the file (or `fallback`).
ExperimentConfig load_config(const std::string& path, ExperimentKind fallback);

}  // namespace rejuv

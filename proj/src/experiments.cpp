#include "rejuv/experiments.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "rejuv/error.hpp"
#include "rejuv/random.hpp"
#include "rejuv/reliability.hpp"
#include "rejuv/scheduler.hpp"
#include "rejuv/taskgen.hpp"

namespace rejuv {
namespace {

SystemParams system_for(const ExperimentConfig& config, double rho) {
  SystemParams p;
  p.rho = rho;
  p.rejuvenation_cost = config.rejuvenation_cost;
  p.reliability_floor = config.reliability_floor;
  p.validate();
  return p;
}

double first_rho(const ExperimentConfig& config) {
  if (config.rho.empty()) throw DomainError("config lists no rho value");
  return config.rho.front();
}

double first_longevity(const ExperimentConfig& config) {
  if (config.longevity.empty()) throw DomainError("config lists no longevity");
  return config.longevity.front();
}

bool is_delay_kind(ExperimentKind kind) {
  return kind == ExperimentKind::delay_vs_utilization ||
         kind == ExperimentKind::delay_vs_rejuvenation_cost;
}

MinDelayParams min_delay_params(const ExperimentConfig& config, Tick cost) {
  MinDelayParams p;
  p.rejuvenation_period = config.sched_period;
  p.rejuvenation_cost = cost;
  p.longevity = config.sched_longevity;
  p.model = config.hazard_model();
  p.system = system_for(config, first_rho(config));
  p.reliability_floor = config.reliability_floor;
  if (config.min_period > 0) p.min_reliable_period = config.min_period;
  if (config.idle_choice == "latest") {
    p.idle_choice = IdleChoice::latest;
  } else if (config.idle_choice == "earliest") {
    p.idle_choice = IdleChoice::earliest;
  } else {
    throw DomainError("idle_choice must be 'latest' or 'earliest'");
  }
  return p;
}

DelayTrial run_trial(const ExperimentConfig& config, double x, std::size_t x_index,
                     std::int64_t trial) {
  const bool cost_sweep = config.kind == ExperimentKind::delay_vs_rejuvenation_cost;
  GenSpec spec;
  spec.task_count = static_cast<std::size_t>(config.task_count);
  spec.target_utilization = cost_sweep ? config.fixed_utilization : x;
  spec.period_pool = config.period_pool;
  spec.periods_any = config.periods_any;
  spec.period_min = config.period_min;
  spec.period_max = config.period_max;
  spec.seed = derive_seed(derive_seed(config.seed, x_index), static_cast<std::uint64_t>(trial));
  const auto generated = generate_taskset(spec);
  const TaskSet& tasks = generated.tasks;
  const Tick cost = cost_sweep ? static_cast<Tick>(x) : config.sched_cost;

  const auto edf = edf_baseline(tasks, config.sched_period, cost, config.sched_longevity);
  const auto lrt = lrt_baseline(tasks, config.sched_period, cost, config.sched_longevity);
  const auto md = min_delay_schedule(tasks, min_delay_params(config, cost));

  DelayTrial t;
  t.x = x;
  t.trial = trial;
  t.seed = spec.seed;
  t.realized_utilization = generated.realized_utilization;
  t.hyperperiod = tasks.hyperperiod();
  t.edf_delay = edf.delay.total;
  t.lrt_delay = lrt.delay.total;
  t.min_delay = md.delay.total;
  t.edf_rejuvenations = edf.delay.count();
  t.min_rejuvenations = md.delay.count();
  t.deadline_misses = verify_schedule(tasks, edf.timeline).size() +
                      verify_schedule(tasks, lrt.timeline).size() +
                      verify_schedule(tasks, md.timeline).size();
  return t;
}

}  // namespace

std::vector<CurvePoint> reliability_curve(const ExperimentConfig& config) {
  const auto model = config.hazard_model();
  const auto params = system_for(config, first_rho(config));
  const PeriodGrid grid(config.periods);
  std::vector<CurvePoint> points;
  for (double longevity : config.longevity) {
    for (double period : grid.values()) {
      points.push_back({longevity, period, reliability(model, params, longevity, period)});
    }
  }
  return points;
}

std::vector<CurvePoint> longevity_curve(const ExperimentConfig& config) {
  const auto model = config.hazard_model();
  const PeriodGrid grid(config.periods);
  std::vector<CurvePoint> points;
  for (double rho : config.rho) {
    const auto params = system_for(config, rho);
    for (double period : grid.values()) {
      points.push_back({rho, period,
                        max_longevity(model, params, period, config.reliability_floor,
                                      config.longevity_step, config.longevity_cap)});
    }
  }
  return points;
}

std::vector<CurvePoint> availability_curve(const ExperimentConfig& config) {
  const auto model = config.hazard_model();
  const double longevity = first_longevity(config);
  const PeriodGrid grid(config.periods);
  std::vector<CurvePoint> points;
  for (double rho : config.rho) {
    const auto params = system_for(config, rho);
    for (double period : grid.values()) {
      const bool feasible = config.rejuvenation_cost < period &&
                            reliability(model, params, longevity, period) >= config.reliability_floor;
      const double a = feasible ? availability(longevity, period, config.rejuvenation_cost) : 0.0;
      points.push_back({rho, period, a});
    }
  }
  return points;
}

std::vector<MaxAvaPoint> max_ava_points(const ExperimentConfig& config) {
  const auto model = config.hazard_model();
  const double longevity = first_longevity(config);
  std::vector<MaxAvaPoint> points;
  for (double rho : config.rho) {
    MaxAvaPoint p;
    p.rho = rho;
    p.period = max_ava(model, system_for(config, rho), longevity, config.reliability_floor);
    if (p.feasible() && config.rejuvenation_cost < p.period) {
      p.availability = availability(longevity, p.period, config.rejuvenation_cost);
    }
    points.push_back(p);
  }
  return points;
}

DelayExperiment run_delay_experiment(const ExperimentConfig& config, unsigned threads) {
  if (!is_delay_kind(config.kind)) throw DomainError("config is not a delay experiment");
  if (config.trials < 1) throw DomainError("trials must be at least 1");
  if (config.task_count < 1) throw DomainError("task_count must be at least 1");
  if (config.scale != 1) throw DomainError("apply_scale() before running the experiment");

  std::vector<double> xs;
  if (config.kind == ExperimentKind::delay_vs_utilization) {
    xs = config.utilizations;
  } else {
    for (Tick e : config.sched_costs) xs.push_back(static_cast<double>(e));
  }
  if (xs.empty()) throw DomainError("delay experiment has no sweep values");
  // Fail fast on a bad scheduler configuration instead of inside a worker.
  (void)min_delay_params(config, config.sched_cost);

  const auto per_x = static_cast<std::size_t>(config.trials);
  DelayExperiment result;
  result.trials.resize(xs.size() * per_x);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, result.trials.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < result.trials.size(); i = next++) {
      try {
        const std::size_t xi = i / per_x;
        result.trials[i] = run_trial(config, xs[xi], xi, static_cast<std::int64_t>(i % per_x));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = result.trials.size();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    DelayRow row{xs[xi], 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < per_x; ++j) {
      const DelayTrial& t = result.trials[xi * per_x + j];
      row.edf += static_cast<double>(t.edf_delay);
      row.lrt += static_cast<double>(t.lrt_delay);
      row.min += static_cast<double>(t.min_delay);
    }
    const auto n = static_cast<double>(per_x);
    row.edf /= n;
    row.lrt /= n;
    row.min /= n;
    result.rows.push_back(row);
  }
  return result;
}

std::string format_number(double value) { return fmt::format("{:.6g}", value); }

void write_reliability_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "L,Tr,R\n";
  for (const auto& p : points) {
    fmt::print(out, "{},{},{}\n", format_number(p.parameter), format_number(p.period),
               format_number(p.value));
  }
}

void write_longevity_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "rho,Tr,L\n";
  for (const auto& p : points) {
    fmt::print(out, "{},{},{}\n", format_number(p.parameter), format_number(p.period),
               format_number(p.value));
  }
}

void write_availability_csv(std::ostream& out, const std::vector<CurvePoint>& points,
                            const std::vector<MaxAvaPoint>& optimum) {
  out << "series,rho,Tr,A\n";
  for (const auto& p : points) {
    fmt::print(out, "curve,{},{},{}\n", format_number(p.parameter), format_number(p.period),
               format_number(p.value));
  }
  for (const auto& p : optimum) {
    fmt::print(out, "max_ava,{},{},{}\n", format_number(p.rho), format_number(p.period),
               format_number(p.availability));
  }
}

void write_max_ava_csv(std::ostream& out, const std::vector<MaxAvaPoint>& points) {
  out << "rho,Tr,A\n";
  for (const auto& p : points) {
    fmt::print(out, "{},{},{}\n", format_number(p.rho), format_number(p.period),
               format_number(p.availability));
  }
}

void write_delay_csv(std::ostream& out, const DelayExperiment& experiment) {
  out << "X,EDFdelay,LRTdelay,MINdelay\n";
  for (const auto& r : experiment.rows) {
    fmt::print(out, "{},{},{},{}\n", format_number(r.x), format_number(r.edf),
               format_number(r.lrt), format_number(r.min));
  }
}

void write_delay_trials_csv(std::ostream& out, const DelayExperiment& experiment) {
  out << "X,trial,seed,U,H,EDFdelay,LRTdelay,MINdelay,EDFrejuvenations,MINrejuvenations,misses\n";
  for (const auto& t : experiment.trials) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{}\n", format_number(t.x), t.trial, t.seed,
               format_number(t.realized_utilization), t.hyperperiod, t.edf_delay, t.lrt_delay,
               t.min_delay, t.edf_rejuvenations, t.min_rejuvenations, t.deadline_misses);
  }
}

void run_schedule_trace(const ExperimentConfig& config, std::ostream& out) {
  if (config.taskset_path.empty()) throw DomainError("trace needs a task set file");
  const TaskSet tasks = load_taskset(config.taskset_path);
  const Tick period = config.sched_period;
  const Tick cost = config.sched_cost;
  const Tick longevity = config.sched_longevity;
  if (config.algorithm == "edf") {
    write_trace_csv(out, edf_baseline(tasks, period, cost, longevity).timeline);
  } else if (config.algorithm == "lrt") {
    write_trace_csv(out, lrt_baseline(tasks, period, cost, longevity).timeline);
  } else if (config.algorithm == "min-delay") {
    write_trace_csv(out, min_delay_schedule(tasks, min_delay_params(config, cost)).timeline);
  } else {
    throw DomainError("algorithm must be edf, lrt or min-delay, got '" + config.algorithm + "'");
  }
}

}  // namespace rejuv

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rejuv/config.hpp"
#include "rejuv/error.hpp"
#include "rejuv/experiments.hpp"
#include "rejuv/taskgen.hpp"

using namespace rejuv;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kBadInput = 2;

/// Options shared by every subcommand plus the key=value overrides it collects.
struct Invocation {
  std::string config_path;
  std::vector<std::string> sets;
  std::map<std::string, std::string> overrides;
  unsigned threads = 0;
  bool print_config = false;
};

void add_common(CLI::App* cmd, Invocation& inv) {
  cmd->add_option("--config", inv.config_path, "key=value config file")->check(CLI::ExistingFile);
  cmd->add_option("--set", inv.sets, "override any config key (key=value), repeatable");
  cmd->add_flag("--print-config", inv.print_config, "print the effective config and exit");
}

// Registers a flag whose value, when given, overrides config key `key`.
void add_override(CLI::App* cmd, Invocation& inv, const std::string& flag, const std::string& key,
                  const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&inv, key](const std::string& v) { inv.overrides[key] = v; }, help);
}

void add_flag_override(CLI::App* cmd, Invocation& inv, const std::string& flag,
                       const std::string& key, const std::string& help) {
  cmd->add_flag_callback(flag, [&inv, key] { inv.overrides[key] = "true"; }, help);
}

void add_io(CLI::App* cmd, Invocation& inv) {
  add_override(cmd, inv, "--seed", "seed", "master seed");
  add_override(cmd, inv, "--out", "out", "output CSV path (stdout when omitted)");
  add_override(cmd, inv, "--scale", "scale", "divide L, T_r, T_0 and E_r by this factor");
}

ExperimentConfig resolve(const Invocation& inv, ExperimentKind kind) {
  ExperimentConfig config =
      inv.config_path.empty() ? ExperimentConfig::defaults(kind) : load_config(inv.config_path, kind);
  config.kind = kind;
  for (const auto& [key, value] : inv.overrides) config.set(key, value);
  for (const std::string& entry : inv.sets) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ParseError("--set expects key=value, got '" + entry + "'");
    config.set(entry.substr(0, eq), entry.substr(eq + 1));
  }
  return config;
}

/// Writes to config.out (and the effective config next to it) or to stdout.
template <typename Fn>
void emit(const ExperimentConfig& config, Fn&& write) {
  if (config.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(config.out, std::ios::binary);
  if (!out) throw Error("cannot write '" + config.out + "'");
  write(out);
  std::ofstream cfg(config.out + ".cfg", std::ios::binary);
  if (!cfg) throw Error("cannot write '" + config.out + ".cfg'");
  cfg << config.to_text();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Software rejuvenation planning and real-time scheduling experiments"};
  app.require_subcommand(1);
  Invocation inv;

  auto* reliability_cmd = app.add_subcommand("reliability-curve", "reliability per grid period (L,Tr,R)");
  auto* longevity_cmd = app.add_subcommand("longevity-curve", "longevity meeting R0 per grid period (rho,Tr,L)");
  auto* availability_cmd = app.add_subcommand("availability", "availability per grid period plus the MAX-AVA row");
  auto* max_ava_cmd = app.add_subcommand("max-ava", "MAX-AVA period per rho; exit 1 when none exists");
  auto* delay_cmd = app.add_subcommand("delay-experiment", "mean delay of EDF, LRT and MIN-DELAY");
  auto* trace_cmd = app.add_subcommand("trace", "schedule a task set file and print its trace");
  auto* gen_cmd = app.add_subcommand("gen-taskset", "draw one random task set");

  for (auto* cmd : {reliability_cmd, longevity_cmd, availability_cmd, max_ava_cmd, delay_cmd,
                    trace_cmd, gen_cmd}) {
    add_common(cmd, inv);
    add_io(cmd, inv);
  }
  for (auto* cmd : {reliability_cmd, longevity_cmd, availability_cmd, max_ava_cmd}) {
    add_override(cmd, inv, "--hazard", "hazard", "weibull or none");
    add_override(cmd, inv, "--shape", "weibull_shape", "Weibull shape k");
    add_override(cmd, inv, "--weibull-scale", "weibull_scale", "Weibull scale r");
    add_override(cmd, inv, "--rho", "rho", "migration success probabilities, comma separated");
    add_override(cmd, inv, "--periods", "periods", "rejuvenation period grid, comma separated");
    add_override(cmd, inv, "--floor", "reliability_floor", "reliability floor R0");
  }
  for (auto* cmd : {reliability_cmd, availability_cmd, max_ava_cmd}) {
    add_override(cmd, inv, "--L", "longevity", "longevities, comma separated");
  }
  for (auto* cmd : {availability_cmd, max_ava_cmd}) {
    add_override(cmd, inv, "--Er", "rejuvenation_cost", "rejuvenation downtime E_r");
  }
  add_override(longevity_cmd, inv, "--step", "longevity_step", "longevity scan step");
  add_override(longevity_cmd, inv, "--cap", "longevity_cap", "longevity scan cap");

  std::string sweep = "utilization";
  delay_cmd->add_option("--sweep", sweep, "utilization or cost")
      ->check(CLI::IsMember({"utilization", "cost"}));
  delay_cmd->add_option("--threads", inv.threads, "worker threads (0: one per core)");
  add_override(delay_cmd, inv, "--trials", "trials", "task sets per sweep value");
  add_override(delay_cmd, inv, "--utilizations", "utilizations", "utilization sweep");
  add_override(delay_cmd, inv, "--costs", "sched_costs", "E_r sweep in ticks");
  add_override(delay_cmd, inv, "--U", "fixed_utilization", "utilization for the E_r sweep");
  add_override(delay_cmd, inv, "--raw-out", "raw_out", "per-trial CSV path");
  for (auto* cmd : {delay_cmd, trace_cmd}) {
    add_override(cmd, inv, "--Tr", "sched_period", "rejuvenation period T_r in ticks");
    add_override(cmd, inv, "--Er", "sched_cost", "rejuvenation cost E_r in ticks");
    add_override(cmd, inv, "--L", "sched_longevity", "scheduling horizon L in ticks");
    add_override(cmd, inv, "--T0", "min_period", "minimal reliable period T_0 (0: derive)");
    add_override(cmd, inv, "--idle-choice", "idle_choice", "latest or earliest");
  }
  for (auto* cmd : {delay_cmd, gen_cmd}) {
    add_flag_override(cmd, inv, "--periods-any", "periods_any", "periods uniform in [period_min, period_max]");
    add_override(cmd, inv, "--n", "task_count", "tasks per set");
  }
  add_override(gen_cmd, inv, "--U", "fixed_utilization", "target utilization");
  add_override(trace_cmd, inv, "--taskset", "taskset", "task set file (period,wcet per line)");
  add_override(trace_cmd, inv, "--algo", "algorithm", "edf, lrt or min-delay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (reliability_cmd->parsed() || longevity_cmd->parsed() || availability_cmd->parsed() ||
        max_ava_cmd->parsed()) {
      const ExperimentKind kind = reliability_cmd->parsed()  ? ExperimentKind::reliability_curve
                                  : longevity_cmd->parsed()  ? ExperimentKind::longevity_curve
                                  : availability_cmd->parsed() ? ExperimentKind::availability_curve
                                                               : ExperimentKind::max_ava;
      const ExperimentConfig config = resolve(inv, kind);
      if (inv.print_config) {
        std::cout << config.to_text();
        return kOk;
      }
      switch (kind) {
        case ExperimentKind::reliability_curve:
          emit(config, [&](std::ostream& o) { write_reliability_csv(o, reliability_curve(config)); });
          return kOk;
        case ExperimentKind::longevity_curve:
          emit(config, [&](std::ostream& o) { write_longevity_csv(o, longevity_curve(config)); });
          return kOk;
        case ExperimentKind::availability_curve:
          emit(config, [&](std::ostream& o) {
            write_availability_csv(o, availability_curve(config), max_ava_points(config));
          });
          return kOk;
        default: {
          const auto points = max_ava_points(config);
          emit(config, [&](std::ostream& o) { write_max_ava_csv(o, points); });
          for (const auto& p : points) {
            if (!p.feasible()) {
              std::cerr << "rejuv: MAX-AVA found no period meeting R0 at rho=" << p.rho << '\n';
              return kInfeasible;
            }
          }
          return kOk;
        }
      }
    }

    if (delay_cmd->parsed()) {
      ExperimentConfig config = resolve(inv, sweep == "cost" ? ExperimentKind::delay_vs_rejuvenation_cost
                                                             : ExperimentKind::delay_vs_utilization);
      config.apply_scale();
      if (inv.print_config) {
        std::cout << config.to_text();
        return kOk;
      }
      const auto result = run_delay_experiment(config, inv.threads);
      emit(config, [&](std::ostream& o) { write_delay_csv(o, result); });
      if (!config.raw_out.empty()) {
        std::ofstream raw(config.raw_out, std::ios::binary);
        if (!raw) throw Error("cannot write '" + config.raw_out + "'");
        write_delay_trials_csv(raw, result);
      }
      return kOk;
    }

    if (trace_cmd->parsed()) {
      // A new T_r without a horizon traces two periods.
      if (inv.overrides.count("sched_period") && !inv.overrides.count("sched_longevity") &&
          inv.config_path.empty()) {
        inv.overrides["sched_longevity"] =
            std::to_string(2 * std::stoll(inv.overrides["sched_period"]));
      }
      ExperimentConfig config = resolve(inv, ExperimentKind::schedule_trace);
      config.apply_scale();
      if (inv.print_config) {
        std::cout << config.to_text();
        return kOk;
      }
      emit(config, [&](std::ostream& o) { run_schedule_trace(config, o); });
      return kOk;
    }

    if (gen_cmd->parsed()) {
      const ExperimentConfig config = resolve(inv, ExperimentKind::delay_vs_utilization);
      if (inv.print_config) {
        std::cout << config.to_text();
        return kOk;
      }
      GenSpec spec;
      spec.task_count = static_cast<std::size_t>(config.task_count);
      spec.target_utilization = config.fixed_utilization;
      spec.period_pool = config.period_pool;
      spec.periods_any = config.periods_any;
      spec.period_min = config.period_min;
      spec.period_max = config.period_max;
      spec.seed = config.seed;
      const auto generated = generate_taskset(spec);
      emit(config, [&](std::ostream& o) {
        o << "# target U " << format_number(generated.target_utilization) << ", realized U "
          << format_number(generated.realized_utilization) << ", seed " << config.seed << '\n';
        write_taskset(o, generated.tasks);
      });
      return kOk;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "rejuv: infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const UnschedulableError& e) {
    std::cerr << "rejuv: unschedulable: " << e.what() << '\n';
    return kInfeasible;
  } catch (const GenerationError& e) {
    std::cerr << "rejuv: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "rejuv: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

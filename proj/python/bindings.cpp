#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rejuv/config.hpp"
#include "rejuv/error.hpp"
#include "rejuv/experiments.hpp"
#include "rejuv/optimizer.hpp"
#include "rejuv/reliability.hpp"
#include "rejuv/scheduler.hpp"
#include "rejuv/taskgen.hpp"

namespace py = pybind11;
using namespace rejuv;

namespace {

SystemParams params_for(double rho) {
  SystemParams p;
  p.rho = rho;
  p.validate();
  return p;
}

py::dict delay_dict(const DelayReport& report) {
  py::list windows;
  for (const auto& e : report.entries) {
    windows.append(py::make_tuple(e.window.start, e.window.end, e.busy));
  }
  py::dict d;
  d["total"] = report.total;
  d["windows"] = windows;
  return d;
}

std::string trace_text(const Timeline& timeline) {
  std::ostringstream out;
  write_trace_csv(out, timeline);
  return out.str();
}

py::dict schedule_dict(const Timeline& timeline, const DelayReport& report, const TaskSet& tasks) {
  py::dict d = delay_dict(report);
  d["trace"] = trace_text(timeline);
  d["deadline_misses"] = verify_schedule(tasks, timeline).size();
  return d;
}

TaskSet to_taskset(const std::vector<std::pair<Tick, Tick>>& pairs) {
  std::vector<Task> tasks;
  for (const auto& [period, wcet] : pairs) tasks.push_back({period, wcet});
  return TaskSet(std::move(tasks));
}

std::vector<std::pair<Tick, Tick>> to_pairs(const TaskSet& set) {
  std::vector<std::pair<Tick, Tick>> pairs;
  for (const Task& t : set.tasks()) pairs.emplace_back(t.period, t.wcet);
  return pairs;
}

ExperimentConfig config_from(const std::string& kind, const py::dict& overrides) {
  const auto parsed = parse_experiment_kind(kind);
  if (!parsed) throw DomainError("unknown experiment kind '" + kind + "'");
  ExperimentConfig config = ExperimentConfig::defaults(*parsed);
  for (const auto& [key, value] : overrides) {
    config.set(py::str(key).cast<std::string>(), py::str(value).cast<std::string>());
  }
  config.apply_scale();
  return config;
}

}  // namespace

PYBIND11_MODULE(_rejuv, m) {
  m.doc() = "Rejuvenation period optimization and MIN-DELAY scheduling";

  auto error = py::register_exception<Error>(m, "RejuvError");
  py::register_exception<InfeasibleError>(m, "InfeasibleError", error);
  py::register_exception<UnschedulableError>(m, "UnschedulableError", error);
  py::register_exception<NoInteriorOptimumError>(m, "NoInteriorOptimumError", error);
  py::register_exception<DegenerateOptimumError>(m, "DegenerateOptimumError", error);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<HazardModel>(m, "HazardModel")
      .def_static("weibull", &HazardModel::weibull, py::arg("shape"), py::arg("scale"))
      .def_static("none", &HazardModel::none)
      .def_property_readonly("shape", &HazardModel::shape)
      .def_property_readonly("scale", &HazardModel::scale)
      .def("hazard", &HazardModel::hazard)
      .def("survival", &HazardModel::survival);

  m.def("reliability", [](const HazardModel& h, double rho, double L, double period) {
    return reliability(h, params_for(rho), L, period);
  }, py::arg("model"), py::arg("rho"), py::arg("longevity"), py::arg("period"));
  m.def("worst_case_reliability", [](const HazardModel& h, double rho, double L, double period) {
    return worst_case_reliability(h, params_for(rho), L, period);
  }, py::arg("model"), py::arg("rho"), py::arg("longevity"), py::arg("period"));
  m.def("monte_carlo_reliability",
        [](const HazardModel& h, double rho, double L, double period, std::uint64_t trials,
           std::uint64_t seed) {
          const auto e = monte_carlo_reliability(h, params_for(rho), L, period, trials, seed);
          return py::make_tuple(e.estimate, e.std_error);
        },
        py::arg("model"), py::arg("rho"), py::arg("longevity"), py::arg("period"),
        py::arg("trials"), py::arg("seed"));

  m.def("optimal_period_closed_form", &optimal_period_closed_form, py::arg("model"), py::arg("rho"));
  m.def("optimal_period_numeric", &optimal_period_numeric, py::arg("model"), py::arg("rho"),
        py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-9);
  m.def("grid_argmax_reliability",
        [](const HazardModel& h, double rho, double L, std::vector<double> grid) {
          return grid_argmax_reliability(h, params_for(rho), L, PeriodGrid(std::move(grid))).period;
        },
        py::arg("model"), py::arg("rho"), py::arg("longevity"), py::arg("periods"));
  m.def("max_longevity",
        [](const HazardModel& h, double rho, double period, double floor, double step, double cap) {
          return max_longevity(h, params_for(rho), period, floor, step, cap);
        },
        py::arg("model"), py::arg("rho"), py::arg("period"), py::arg("floor"),
        py::arg("step") = 1.0, py::arg("cap") = 1e6);
  m.def("availability", &availability, py::arg("longevity"), py::arg("period"),
        py::arg("rejuvenation_cost"));
  m.def("max_ava", [](const HazardModel& h, double rho, double L, double floor) {
    return max_ava(h, params_for(rho), L, floor);
  }, py::arg("model"), py::arg("rho"), py::arg("longevity"), py::arg("floor"));
  m.def("min_period_for_reliability",
        [](const HazardModel& h, double rho, double L, double floor, double step) {
          return min_period_for_reliability(h, params_for(rho), L, floor, step);
        },
        py::arg("model"), py::arg("rho"), py::arg("longevity"), py::arg("floor"),
        py::arg("step") = 1.0);
  m.def("t_min", &t_min, py::arg("longevity"), py::arg("period"));

  m.def("hyperperiod", [](const std::vector<std::pair<Tick, Tick>>& tasks) {
    return to_taskset(tasks).hyperperiod();
  }, py::arg("tasks"));
  m.def("edf_baseline",
        [](const std::vector<std::pair<Tick, Tick>>& tasks, Tick period, Tick cost, Tick L) {
          const TaskSet set = to_taskset(tasks);
          const auto r = edf_baseline(set, period, cost, L);
          return schedule_dict(r.timeline, r.delay, set);
        },
        py::arg("tasks"), py::arg("period"), py::arg("cost"), py::arg("longevity"));
  m.def("lrt_baseline",
        [](const std::vector<std::pair<Tick, Tick>>& tasks, Tick period, Tick cost, Tick L) {
          const TaskSet set = to_taskset(tasks);
          const auto r = lrt_baseline(set, period, cost, L);
          return schedule_dict(r.timeline, r.delay, set);
        },
        py::arg("tasks"), py::arg("period"), py::arg("cost"), py::arg("longevity"));
  m.def("min_delay",
        [](const std::vector<std::pair<Tick, Tick>>& tasks, Tick period, Tick cost, Tick L,
           std::optional<Tick> min_period, const std::string& idle_choice) {
          const TaskSet set = to_taskset(tasks);
          MinDelayParams p;
          p.rejuvenation_period = period;
          p.rejuvenation_cost = cost;
          p.longevity = L;
          p.min_reliable_period = min_period;
          if (idle_choice == "earliest") {
            p.idle_choice = IdleChoice::earliest;
          } else if (idle_choice != "latest") {
            throw DomainError("idle_choice must be 'latest' or 'earliest'");
          }
          const auto r = min_delay_schedule(set, p);
          py::dict d = schedule_dict(r.timeline, r.delay, set);
          d["shift_floor"] = r.shift_floor;
          return d;
        },
        py::arg("tasks"), py::arg("period"), py::arg("cost"), py::arg("longevity"),
        py::arg("min_period") = py::none(), py::arg("idle_choice") = "latest");

  m.def("uunifast", &uunifast, py::arg("n"), py::arg("total"), py::arg("seed"));
  m.def("generate_taskset",
        [](std::size_t n, double utilization, std::uint64_t seed, bool periods_any) {
          GenSpec spec;
          spec.task_count = n;
          spec.target_utilization = utilization;
          spec.seed = seed;
          spec.periods_any = periods_any;
          return to_pairs(generate_taskset(spec).tasks);
        },
        py::arg("n"), py::arg("utilization"), py::arg("seed"), py::arg("periods_any") = false);

  m.def("default_config", [](const std::string& kind) {
    return config_from(kind, py::dict()).to_text();
  }, py::arg("kind"));
  m.def("run_experiment",
        [](const std::string& kind, const py::dict& overrides) {
          const ExperimentConfig config = config_from(kind, overrides);
          std::ostringstream out;
          switch (config.kind) {
            case ExperimentKind::reliability_curve:
              write_reliability_csv(out, reliability_curve(config));
              break;
            case ExperimentKind::longevity_curve:
              write_longevity_csv(out, longevity_curve(config));
              break;
            case ExperimentKind::availability_curve:
              write_availability_csv(out, availability_curve(config), max_ava_points(config));
              break;
            case ExperimentKind::max_ava:
              write_max_ava_csv(out, max_ava_points(config));
              break;
            case ExperimentKind::delay_vs_utilization:
            case ExperimentKind::delay_vs_rejuvenation_cost: {
              py::gil_scoped_release release;
              const auto result = run_delay_experiment(config);
              write_delay_csv(out, result);
              break;
            }
            case ExperimentKind::schedule_trace:
              run_schedule_trace(config, out);
              break;
          }
          return out.str();
        },
        py::arg("kind"), py::arg("overrides") = py::dict(),
        "Runs one experiment with key=value overrides on its defaults; returns the CSV text.");
}

#include "rejuv/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rejuv/error.hpp"
#include "rejuv/optimizer.hpp"
#include "rejuv/taskgen.hpp"

namespace rejuv {
namespace {

struct KindName {
  ExperimentKind kind;
  std::string_view name;
  std::string_view command;
};

constexpr std::array<KindName, 7> kKinds{{
    {ExperimentKind::reliability_curve, "reliability_curve", "reliability-curve"},
    {ExperimentKind::longevity_curve, "longevity_curve", "longevity-curve"},
    {ExperimentKind::availability_curve, "availability_curve", "availability"},
    {ExperimentKind::max_ava, "max_ava", "max-ava"},
    {ExperimentKind::delay_vs_utilization, "delay_vs_utilization", "delay-experiment"},
    {ExperimentKind::delay_vs_rejuvenation_cost, "delay_vs_rejuvenation_cost", "delay-cost"},
    {ExperimentKind::schedule_trace, "schedule_trace", "trace"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> values;
  text = trim(text);
  if (text.empty()) return values;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    values.push_back(parse_number<T>(key, text.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ParseError("bad boolean '" + std::string(text) + "' for " + std::string(key));
}

// Shortest text that reads back to the same value.
template <typename T>
std::string format_value(const T& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else if constexpr (std::is_arithmetic_v<T>) {
    return fmt::format("{}", v);
  } else {
    return fmt::format("{}", fmt::join(v, ","));
  }
}

template <typename T>
void parse_into(T& field, std::string_view key, std::string_view text) {
  if constexpr (std::is_same_v<T, bool>) {
    field = parse_bool(key, text);
  } else if constexpr (std::is_same_v<T, std::string>) {
    field = std::string(trim(text));
  } else if constexpr (std::is_arithmetic_v<T>) {
    field = parse_number<T>(key, text);
  } else {
    field = parse_list<typename T::value_type>(key, text);
  }
}

struct Field {
  std::string_view key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, std::string_view)> set;
};

template <typename T>
Field field(std::string_view key, T ExperimentConfig::*member) {
  return Field{key,
               [member](const ExperimentConfig& c) { return format_value(c.*member); },
               [member, key](ExperimentConfig& c, std::string_view text) {
                 parse_into(c.*member, key, text);
               }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      Field{"kind", [](const ExperimentConfig& c) { return std::string(to_string(c.kind)); },
            [](ExperimentConfig& c, std::string_view text) {
              const auto kind = parse_experiment_kind(trim(text));
              if (!kind) throw ParseError("unknown experiment kind '" + std::string(trim(text)) + "'");
              c.kind = *kind;
            }},
      field("hazard", &ExperimentConfig::hazard),
      field("weibull_shape", &ExperimentConfig::weibull_shape),
      field("weibull_scale", &ExperimentConfig::weibull_scale),
      field("rho", &ExperimentConfig::rho),
      field("longevity", &ExperimentConfig::longevity),
      field("periods", &ExperimentConfig::periods),
      field("reliability_floor", &ExperimentConfig::reliability_floor),
      field("rejuvenation_cost", &ExperimentConfig::rejuvenation_cost),
      field("longevity_step", &ExperimentConfig::longevity_step),
      field("longevity_cap", &ExperimentConfig::longevity_cap),
      field("task_count", &ExperimentConfig::task_count),
      field("period_pool", &ExperimentConfig::period_pool),
      field("periods_any", &ExperimentConfig::periods_any),
      field("period_min", &ExperimentConfig::period_min),
      field("period_max", &ExperimentConfig::period_max),
      field("utilizations", &ExperimentConfig::utilizations),
      field("fixed_utilization", &ExperimentConfig::fixed_utilization),
      field("trials", &ExperimentConfig::trials),
      field("sched_longevity", &ExperimentConfig::sched_longevity),
      field("sched_period", &ExperimentConfig::sched_period),
      field("min_period", &ExperimentConfig::min_period),
      field("sched_cost", &ExperimentConfig::sched_cost),
      field("sched_costs", &ExperimentConfig::sched_costs),
      field("idle_choice", &ExperimentConfig::idle_choice),
      field("taskset", &ExperimentConfig::taskset_path),
      field("algorithm", &ExperimentConfig::algorithm),
      field("seed", &ExperimentConfig::seed),
      field("scale", &ExperimentConfig::scale),
      field("out", &ExperimentConfig::out),
      field("raw_out", &ExperimentConfig::raw_out),
  };
  return table;
}

// Calls fn(key, value, line) for each non-comment line.
template <typename Fn>
void for_each_entry(std::string_view text, Fn&& fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    fn(trim(line.substr(0, eq)), line.substr(eq + 1), line_no);
  }
}

Tick divide_exact(Tick value, std::int64_t scale, const char* what) {
  if (value % scale != 0) {
    throw DomainError(fmt::format("{} = {} is not divisible by scale {}", what, value, scale));
  }
  return value / scale;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view text) {
  for (const auto& k : kKinds) {
    if (text == k.name || text == k.command) return k.kind;
  }
  return std::nullopt;
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  const PeriodGrid grid = PeriodGrid::standard();
  c.periods.assign(grid.values().begin(), grid.values().end());
  c.period_pool = kDivisorFriendlyPeriods;
  switch (kind) {
    case ExperimentKind::reliability_curve:
      break;
    case ExperimentKind::longevity_curve:
      c.rho = {0.99999, 0.999999};
      break;
    case ExperimentKind::availability_curve:
    case ExperimentKind::max_ava:
      c.rho = {0.99999, 0.999999};
      c.longevity = {100.0};
      break;
    case ExperimentKind::delay_vs_utilization:
      c.utilizations = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      break;
    case ExperimentKind::delay_vs_rejuvenation_cost:
      for (Tick e = 100'000; e <= 200'000; e += 10'000) c.sched_costs.push_back(e);
      break;
    case ExperimentKind::schedule_trace:
      c.hazard = "none";
      c.rho = {1.0};
      c.reliability_floor = 0.0;
      c.sched_period = 7;
      c.sched_cost = 2;
      c.sched_longevity = 14;
      c.min_period = 0;
      break;
  }
  return c;
}

HazardModel ExperimentConfig::hazard_model() const {
  if (hazard == "weibull") return HazardModel::weibull(weibull_shape, weibull_scale);
  if (hazard == "none") return HazardModel::none();
  throw DomainError("hazard must be 'weibull' or 'none', got '" + hazard + "'");
}

void ExperimentConfig::apply_scale() {
  if (scale < 1) throw DomainError("scale must be a positive integer");
  if (scale == 1) return;
  sched_longevity = divide_exact(sched_longevity, scale, "sched_longevity");
  sched_period = divide_exact(sched_period, scale, "sched_period");
  min_period = divide_exact(min_period, scale, "min_period");
  sched_cost = divide_exact(sched_cost, scale, "sched_cost");
  for (Tick& e : sched_costs) e = divide_exact(e, scale, "sched_costs");
  scale = 1;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  for (const Field& f : fields()) {
    if (f.key == key) {
      f.set(*this, value);
      return;
    }
  }
  throw ParseError("unknown config key '" + std::string(key) + "'");
}

std::string ExperimentConfig::to_text() const {
  std::string text;
  for (const Field& f : fields()) {
    text += fmt::format("{}={}\n", f.key, f.get(*this));
  }
  return text;
}

void ExperimentConfig::merge_text(std::string_view text) {
  for_each_entry(text, [this](std::string_view key, std::string_view value, int line) {
    try {
      set(key, value);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  });
}

ExperimentConfig load_config(const std::string& path, ExperimentKind fallback) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  ExperimentKind kind = fallback;
  try {
    for_each_entry(text, [&kind](std::string_view key, std::string_view value, int line) {
      if (key != "kind") return;
      const auto parsed = parse_experiment_kind(trim(value));
      if (!parsed) throw ParseError("unknown experiment kind '" + std::string(trim(value)) + "'", line);
      kind = *parsed;
    });
    ExperimentConfig config = ExperimentConfig::defaults(kind);
    config.merge_text(text);
    return config;
  } catch (const ParseError& e) {
    throw e.prefixed(path + ": ");
  }
}

}  // namespace rejuv

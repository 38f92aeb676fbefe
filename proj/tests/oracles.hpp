// Independent reference computations used only by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rejuv/task.hpp"
#include "rejuv/timeline.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

/// exp(-integral of k t^(k-1) / r^k over [0, t]) by tanh-sinh quadrature,
/// which copes with the endpoint singularity when k < 1.
inline double weibull_survival_quadrature(double shape, double scale, double t) {
  if (t == 0.0) return 1.0;
  const auto hazard = [&](double x) { return shape / scale * std::pow(x / scale, shape - 1.0); };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return std::exp(-integrator.integrate(hazard, 0.0, t));
}

inline Big weibull_survival_big(double shape, double scale, const Big& t) {
  return exp(-pow(t / Big(scale), Big(shape)));
}

/// Reliability with a partial last segment, evaluated in 50 decimal digits.
inline Big reliability_big(double shape, double scale, double rho, std::int64_t longevity_num,
                           std::int64_t period_num) {
  const Big longevity(longevity_num);
  const Big period(period_num);
  const std::int64_t segments = (longevity_num + period_num - 1) / period_num;
  const Big last = longevity - period * Big(segments - 1);
  return pow(Big(rho), Big(2 * (segments - 1))) *
         pow(weibull_survival_big(shape, scale, period), Big(segments - 1)) *
         weibull_survival_big(shape, scale, last);
}

inline Big worst_case_big(double shape, double scale, double rho, const Big& longevity,
                          const Big& period) {
  const Big ratio = longevity / period;
  return pow(Big(rho), Big(2) * (ratio - Big(1))) *
         pow(weibull_survival_big(shape, scale, period), ratio);
}

/// Smallest T in 1..L with floor(L/T) == floor(L/T_r), by enumeration.
inline std::int64_t t_min_enumerated(std::int64_t longevity, std::int64_t period) {
  for (std::int64_t t = 1; t <= longevity; ++t) {
    if (longevity / t == longevity / period) return t;
  }
  return -1;
}

/// Tick-by-tick EDF: one vector entry per tick, -1 idle, otherwise the task index.
/// Jobs released in [0, horizon) with deadline <= horizon; ties to the lower index.
inline std::vector<int> edf_ticks(const rejuv::TaskSet& tasks, rejuv::Tick horizon) {
  const std::size_t n = tasks.size();
  std::vector<rejuv::Tick> remaining(n, 0), deadline(n, 0);
  std::vector<int> out(static_cast<std::size_t>(horizon), -1);
  for (rejuv::Tick t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const rejuv::Tick p = tasks[i].period;
      if (t % p == 0 && t + p <= horizon) {
        remaining[i] = tasks[i].wcet;
        deadline[i] = t + p;
      }
    }
    int best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (remaining[i] > 0 && (best < 0 || deadline[i] < deadline[static_cast<std::size_t>(best)])) {
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) {
      --remaining[static_cast<std::size_t>(best)];
      out[static_cast<std::size_t>(t)] = best;
    }
  }
  return out;
}

/// Expands a timeline into one entry per tick (task index or -1).
inline std::vector<int> ticks_of(const rejuv::Timeline& timeline) {
  std::vector<int> out;
  for (const auto& s : timeline.segments()) {
    for (rejuv::Tick t = s.start; t < s.end; ++t) {
      out.push_back(s.kind == rejuv::SegmentKind::exec ? s.task : -1);
    }
  }
  return out;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace oracle

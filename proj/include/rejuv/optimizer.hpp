#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "rejuv/hazard.hpp"
#include "rejuv/system.hpp"

namespace rejuv {

/// Ordered set of candidate rejuvenation periods.
class PeriodGrid {
 public:
  /// Throws DomainError unless non-empty, positive and strictly increasing.
  explicit PeriodGrid(std::vector<double> values);
  PeriodGrid(std::initializer_list<double> values) : PeriodGrid(std::vector<double>(values)) {}

  /// {1, 5, 10, 15, ..., 100}.
  static PeriodGrid standard();

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

enum class OptimizationMethod { closed_form, numeric_root, grid_scan };

std::string_view to_string(OptimizationMethod method);

struct OptimizationResult {
  double period = 0.0;
  double objective = 0.0;
  OptimizationMethod method = OptimizationMethod::grid_scan;
};

/// MAX-AVA failure sentinel.
inline constexpr double kMaxAvaFailure = -1.0;

/// Weibull optimum (2 r^k ln(rho) / (1 - k))^(1/k).
/// Throws NoInteriorOptimumError unless the hazard ages, DegenerateOptimumError when rho == 1.
double optimal_period_closed_form(const HazardModel& model, double rho);

/// Residual of the stationarity condition
///   T/S(T) * dS/dT - ln S(T) - 2 ln rho,  S the survival function,
/// which for any hazard reduces to  H(T) - T lambda(T) - 2 ln rho  with H the
/// cumulative hazard. Positive below the optimum, negative above it.
double stationarity_residual(const HazardModel& model, double rho, double period);

/// Bisection on stationarity_residual over [lo, hi] until the bracket is no
/// wider than `tol`. Throws BracketError when the residual does not change sign.
double optimal_period_numeric(const HazardModel& model, double rho, double lo, double hi,
                              double tol);

/// Grid member with the highest reliability over [0, L]; ties go to the smaller period.
OptimizationResult grid_argmax_reliability(const HazardModel& model, const SystemParams& params,
                                           double longevity, const PeriodGrid& grid);

/// Grows L = step, 2 step, ... and returns the first L whose reliability drops
/// below `floor` (the longevity at which the floor fails). Returns `cap` when
/// the floor holds all the way up to it. Reliability is non-increasing in L,
/// so the scan is done by doubling and bisection over multiples of `step`.
double max_longevity(const HazardModel& model, const SystemParams& params, double period,
                     double floor, double step = 1.0, double cap = 1e6);

struct LongevityOptimum {
  OptimizationResult best;               ///< objective is the longevity
  std::vector<double> longevities;       ///< one per grid period
  double decay_rate = 0.0;               ///< reliability_curvature at (best longevity, best period)
};

LongevityOptimum optimal_period_for_longevity(const HazardModel& model, const SystemParams& params,
                                              double floor, const PeriodGrid& grid,
                                              double step = 1.0, double cap = 1e6);

/// Central second difference of worst_case_reliability in the period:
/// the reliability decay rate. `h <= 0` selects 1e-3 * period.
double reliability_curvature(const HazardModel& model, const SystemParams& params,
                             double longevity, double period, double h = 0.0);

/// (L - (ceil(L/T_r) - 1) E_r) / L. Throws DomainError unless 0 <= E_r < T_r.
double availability(double longevity, double period, double rejuvenation_cost);

/// MAX-AVA: start with no rejuvenation and add one at a time (period L/(n+1))
/// until the worst-case reliability reaches `floor`. Returns kMaxAvaFailure
/// once n exceeds L.
double max_ava(const HazardModel& model, const SystemParams& params, double longevity,
               double floor);

/// Smallest multiple of `step` whose reliability over [0, L] reaches `floor`.
/// Throws InfeasibleError when no period up to L qualifies.
double min_period_for_reliability(const HazardModel& model, const SystemParams& params,
                                  double longevity, double floor, double step = 1.0);

/// Smallest natural T with floor(L/T) == floor(L/T_r). Requires 0 < T_r <= L.
std::int64_t t_min(std::int64_t longevity, std::int64_t period);

}  // namespace rejuv

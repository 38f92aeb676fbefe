#include "rejuv/hazard.hpp"

#include <cmath>
#include <string>

#include "rejuv/error.hpp"
#include "rejuv/system.hpp"

namespace rejuv {

HazardModel HazardModel::weibull(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    throw DomainError("weibull hazard needs shape > 0 and scale > 0");
  }
  return HazardModel(Kind::weibull, shape, scale);
}

HazardModel HazardModel::none() { return HazardModel(Kind::none, 0.0, 0.0); }

double HazardModel::hazard(double t) const {
  if (!(t >= 0.0)) throw DomainError("hazard: negative time " + std::to_string(t));
  if (kind_ == Kind::none) return 0.0;
  if (t == 0.0) {
    // k t^(k-1) at the origin: 0 for k > 1, 1/r for k == 1, unbounded for k < 1.
    if (shape_ > 1.0) return 0.0;
    if (shape_ == 1.0) return 1.0 / scale_;
    return INFINITY;
  }
  return shape_ / scale_ * std::pow(t / scale_, shape_ - 1.0);
}

double HazardModel::cumulative_hazard(double t) const {
  if (!(t >= 0.0)) throw DomainError("cumulative_hazard: negative time " + std::to_string(t));
  if (kind_ == Kind::none) return 0.0;
  return std::pow(t / scale_, shape_);
}

double HazardModel::survival(double t) const { return std::exp(-cumulative_hazard(t)); }

double survival(const HazardModel& model, double t) { return model.survival(t); }

void SystemParams::validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("rho must lie in (0, 1]");
  if (!(rejuvenation_cost >= 0.0)) throw DomainError("rejuvenation cost must be >= 0");
  if (!(reboot_cost >= 0.0)) throw DomainError("reboot cost must be >= 0");
  if (network_failure_rate && !(*network_failure_rate >= 0.0)) {
    throw DomainError("network failure rate must be >= 0");
  }
  if (!(reliability_floor >= 0.0 && reliability_floor <= 1.0)) {
    throw DomainError("reliability floor must lie in [0, 1]");
  }
  if (!(longevity > 0.0)) throw DomainError("longevity must be > 0");
}

}  // namespace rejuv

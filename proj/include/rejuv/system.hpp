#pragma once

#include <optional>

namespace rejuv {

/// Main/backup pair parameters. All times share the scheduler's abstract tick unit.
struct SystemParams {
  double rho = 1.0;                  ///< success probability of a single task migration
  double rejuvenation_cost = 0.0;    ///< E_r, downtime of one rejuvenation
  double reboot_cost = 0.0;          ///< E_b, informational only
  std::optional<double> network_failure_rate;  ///< lambda_0, metadata only
  double reliability_floor = 0.0;    ///< R_0
  double longevity = 1.0;            ///< L

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

}  // namespace rejuv

#pragma once

namespace rejuv {

/// Aging-induced transient failure model.
///
/// Either a Weibull hazard lambda(t) = k t^(k-1) / r^k with survival
/// exp(-(t/r)^k), or the zero hazard (no transient failures at all). The
/// survival function restarts from 1 after every rejuvenation.
class HazardModel {
 public:
  /// Throws DomainError unless shape > 0 and scale > 0.
  static HazardModel weibull(double shape, double scale);
  static HazardModel none();

  bool is_weibull() const noexcept { return kind_ == Kind::weibull; }
  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

  /// Failure rate strictly increases with age (Weibull with shape > 1).
  bool ages() const noexcept { return is_weibull() && shape_ > 1.0; }

  double hazard(double t) const;
  /// Integral of the hazard over [0, t].
  double cumulative_hazard(double t) const;
  /// exp(-cumulative_hazard(t)). Throws DomainError for t < 0.
  double survival(double t) const;

  friend bool operator==(const HazardModel&, const HazardModel&) = default;

 private:
  enum class Kind { weibull, none };
  HazardModel(Kind kind, double shape, double scale) : kind_(kind), shape_(shape), scale_(scale) {}

  Kind kind_;
  double shape_;
  double scale_;
};

/// Free-function form of HazardModel::survival.
double survival(const HazardModel& model, double t);

}  // namespace rejuv

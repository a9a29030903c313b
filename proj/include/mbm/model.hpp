#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mbm/geometry.hpp"

namespace mbm {

/// Law of the speed |v| of an inertial particle.
class SpeedLaw {
 public:
  struct Constant {
    double speed;
  };
  struct Exponential {
    double mean;
  };
  struct Pareto {
    double shape;  // alpha
    double scale;  // x_m, the minimum speed
  };
  struct Empirical {
    std::vector<double> speeds;  // sorted ascending
  };
  using Kind = std::variant<Constant, Exponential, Pareto, Empirical>;

  static SpeedLaw constant(double speed);
  static SpeedLaw exponential(double mean);
  static SpeedLaw pareto(double shape, double scale);
  static SpeedLaw empirical(std::vector<double> speeds);

  /// Parses "const:c", "exp:m", "pareto:alpha,x_m".
  static SpeedLaw parse(const std::string& text);

  const Kind& kind() const noexcept { return kind_; }

  /// E|v|; +infinity for Pareto with shape <= 1.
  double mean_speed() const;

  bool has_infinite_mean() const;

  /// Smallest q with P(|v| > q) <= tail_probability.
  double upper_quantile(double tail_probability) const;

  /// Inverse-CDF sample from u uniform in (0, 1).
  double sample(double u) const;

  std::string describe() const;

 private:
  explicit SpeedLaw(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

struct BrownianMotion {};

struct InertialMotion {
  SpeedLaw speed_law;
};

using MotionModel = std::variant<BrownianMotion, InertialMotion>;

/// Homogeneous mobile Boolean model: Poisson germs of intensity lambda in R^d
/// and a target ball whose combined radius R = r + r0 is the only radius the
/// detection-time law depends on.
class ModelSpec {
 public:
  /// Throws DomainError unless lambda > 0 and R > 0 (both finite).
  ModelSpec(Dimension dim, double lambda, double radius, MotionModel motion);

  static ModelSpec brownian(int d, double lambda, double radius);
  static ModelSpec inertial(int d, double lambda, double radius, SpeedLaw speed);

  Dimension dim() const noexcept { return dim_; }
  int d() const noexcept { return dim_.value(); }
  double lambda() const noexcept { return lambda_; }
  double radius() const noexcept { return radius_; }
  const MotionModel& motion() const noexcept { return motion_; }

  bool is_brownian() const noexcept { return std::holds_alternative<BrownianMotion>(motion_); }
  /// Requires an inertial model.
  const SpeedLaw& speed_law() const;

  ModelSpec with_radius(double radius) const;
  ModelSpec with_lambda(double lambda) const;

 private:
  Dimension dim_;
  double lambda_;
  double radius_;
  MotionModel motion_;
};

}  // namespace mbm

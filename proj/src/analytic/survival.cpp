#include <cmath>
#include <numbers>

#include "mbm/analytic.hpp"
#include "mbm/errors.hpp"

namespace mbm {

namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time t must be finite and >= 0");
}

void require_brownian_branch(const ModelSpec& spec, EvalOptions options) {
  if (!spec.dim().is_odd() && !options.allow_numeric_even) {
    throw DomainError("Brownian survival in even dimension d = " + std::to_string(spec.d()) +
                      " has no closed form; enable numerical inversion explicitly");
  }
}

double log_atom(const ModelSpec& spec) {
  return -spec.lambda() * unit_ball_volume(spec.dim()) * std::pow(spec.radius(), spec.d());
}

// The germs that reach R B by time t with velocity v start in the capsule
// R B - [0, t] v, of volume omega_d R^d + omega_{d-1} R^{d-1} t |v|.
double inertial_hazard(const ModelSpec& spec) {
  const int d = spec.d();
  const double cross_section = d == 1 ? 1.0 : unit_ball_volume(Dimension(d - 1));
  return spec.lambda() * cross_section * std::pow(spec.radius(), d - 1) * spec.speed_law().mean_speed();
}

}  // namespace

Provenance survival_provenance(const ModelSpec& spec, EvalOptions options) {
  if (!spec.is_brownian()) return Provenance::ClosedForm;
  require_brownian_branch(spec, options);
  return spec.d() <= 5 && spec.dim().is_odd() ? Provenance::ClosedForm : Provenance::LaplaceInverted;
}

SausageValue survival_detailed(const ModelSpec& spec, double t, EvalOptions options) {
  check_time(t);
  const Provenance provenance = survival_provenance(spec, options);
  if (!spec.is_brownian()) {
    if (spec.speed_law().has_infinite_mean()) return {0.0, 0.0, provenance};
    return {std::exp(log_atom(spec) - inertial_hazard(spec) * t), 0.0, provenance};
  }
  if (t == 0.0) return {std::exp(log_atom(spec)), 0.0, provenance};
  const SausageValue v = sausage_volume_detailed(spec.dim(), spec.radius(), t);
  const double p = std::exp(-spec.lambda() * v.value);
  return {p, spec.lambda() * v.abs_error * p, provenance};
}

double survival(const ModelSpec& spec, double t, EvalOptions options) {
  return survival_detailed(spec, t, options).value;
}

SurvivalCurve survival_curve(const ModelSpec& spec, std::span<const double> grid, EvalOptions options) {
  SurvivalCurve curve;
  curve.provenance = survival_provenance(spec, options);
  curve.times.assign(grid.begin(), grid.end());
  curve.values.reserve(grid.size());
  const bool with_errors = curve.provenance == Provenance::LaplaceInverted;
  for (double t : grid) {
    const SausageValue v = survival_detailed(spec, t, options);
    curve.values.push_back(v.value);
    if (with_errors) curve.std_errors.push_back(v.abs_error);
  }
  // Inversion noise may break monotonicity at the 1e-16 level; clamp it.
  for (std::size_t i = 1; i < curve.values.size(); ++i) {
    if (curve.values[i] > curve.values[i - 1]) curve.values[i] = curve.values[i - 1];
  }
  curve.validate();
  return curve;
}

double hazard_rate(const ModelSpec& spec, double t, EvalOptions options) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("hazard rate needs t > 0");
  if (!spec.is_brownian()) {
    if (spec.speed_law().has_infinite_mean()) {
      throw DomainError("hazard rate is undefined when E|v| is infinite (S = 0 almost surely)");
    }
    return inertial_hazard(spec);
  }
  require_brownian_branch(spec, options);
  return spec.lambda() * sausage_volume_rate(spec.dim(), spec.radius(), t);
}

double survival_asymptotic(const ModelSpec& spec, double t) {
  if (!spec.is_brownian()) throw DomainError("asymptotic survival is defined for Brownian models");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("asymptotic survival needs t > 0");
  const int d = spec.d();
  const double R = spec.radius();
  if (d == 1) throw DomainError("no linear-in-t asymptote in dimension 1");
  if (d == 2) {
    const double L = std::log(t / (R * R));
    if (!(L > 0.0)) throw DomainError("d = 2 asymptote needs t > R^2");
    return -2.0 * std::numbers::pi * spec.lambda() * t / L;
  }
  return -hazard_asymptotic(spec, t) * t;
}

double hazard_asymptotic(const ModelSpec& spec, double t) {
  if (!spec.is_brownian()) throw DomainError("asymptotic hazard is defined for Brownian models");
  const int d = spec.d();
  const double R = spec.radius();
  if (d == 1) throw DomainError("no linear-in-t asymptote in dimension 1");
  if (d == 2) {
    const double L = std::log(t / (R * R));
    if (!(L > 0.0)) throw DomainError("d = 2 asymptote needs t > R^2");
    return 2.0 * std::numbers::pi * spec.lambda() * (L - 1.0) / (L * L);
  }
  return spec.lambda() * unit_ball_volume(spec.dim()) * 0.5 * d * (d - 2) * std::pow(R, d - 2);
}

}  // namespace mbm

#include <cmath>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mbm/analytic.hpp"
#include "mbm/errors.hpp"

namespace mbm {

namespace {

constexpr double kSurvivalCutoff = 1e-12;
constexpr double kQuadratureTolerance = 1e-12;
constexpr int kMaxDoublings = 400;

// Upper bound of int_T^inf P(S > t) dt given P(S > T).
double tail_bound(const ModelSpec& spec, double T, double p_T) {
  if (p_T == 0.0) return 0.0;
  if (!spec.is_brownian()) return p_T / hazard_rate(spec, T);
  if (spec.d() == 1) {
    // P(S > t) = P(S > T) exp(-c (sqrt t - sqrt T)) with c = lambda sqrt(8/pi).
    const double c = spec.lambda() * std::sqrt(8.0 / std::numbers::pi);
    return 2.0 * p_T * (std::sqrt(T) / c + 1.0 / (c * c));
  }
  if (spec.d() == 2) {
    // The hazard decreases like 2 pi lambda / log t; integrate the bound
    // P(S > t) <= P(S > T) exp(-h(t') (t - T)) with h evaluated far out.
    const double R2 = spec.radius() * spec.radius();
    const double t_far = std::max(T, R2 * std::exp(2.0)) * 1e6;
    return p_T / hazard_asymptotic(spec, t_far);
  }
  // For d >= 3 the hazard decreases to its asymptote from above.
  return p_T / hazard_asymptotic(spec, T);
}

}  // namespace

ExpectationResult expected_detection_time(const ModelSpec& spec, EvalOptions options) {
  using Method = ExpectationResult::Method;
  const double atom = std::exp(-spec.lambda() * unit_ball_volume(spec.dim()) *
                               std::pow(spec.radius(), spec.d()));
  if (!spec.is_brownian()) {
    if (spec.speed_law().has_infinite_mean()) return {0.0, 0.0, Method::Degenerate};
    return {atom / hazard_rate(spec, 1.0), 0.0, Method::Exact};
  }
  if (spec.d() == 1) {
    const double l = spec.lambda();
    return {std::numbers::pi / (4.0 * l * l) * atom, 0.0, Method::Exact};
  }
  return expected_detection_time_quadrature(spec, options);
}

ExpectationResult expected_detection_time_quadrature(const ModelSpec& spec, EvalOptions options) {
  if (!spec.is_brownian() && spec.speed_law().has_infinite_mean()) {
    return {0.0, 0.0, ExpectationResult::Method::Degenerate};
  }
  auto S = [&](double t) { return survival(spec, t, options); };
  double T = spec.radius() * spec.radius();
  double p_T = S(T);
  int doublings = 0;
  while (p_T >= kSurvivalCutoff) {
    if (++doublings > kMaxDoublings) {
      throw ConvergenceError("survival does not decay; expected detection time is not finite");
    }
    T *= 2.0;
    p_T = S(T);
  }
  // t = u^2 removes the sqrt(t) behaviour of the sausage volume near 0.
  auto integrand = [&](double u) { return 2.0 * u * S(u * u); };
  double quad_error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::sqrt(T), 15, kQuadratureTolerance, &quad_error);
  const double tail = tail_bound(spec, T, p_T);
  return {integral + tail, quad_error + tail, ExpectationResult::Method::Quadrature};
}

SmallRadiusFit fit_small_radius_law(const ModelSpec& base, std::span<const double> radii,
                                    EvalOptions options) {
  const std::size_t n = radii.size();
  if (n < 3) throw DomainError("small-radius fit needs at least 3 radii");
  SmallRadiusFit fit{};
  fit.radii.assign(radii.begin(), radii.end());
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double es = expected_detection_time(base.with_radius(radii[i]), options).value;
    if (!(es > 0.0) || !std::isfinite(es)) {
      throw DomainError("small-radius fit needs finite positive expectations");
    }
    fit.expectations.push_back(es);
    x[i] = std::log(radii[i]);
    y[i] = std::log(es);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("small-radius fit needs distinct radii");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - intercept - slope * x[i];
    ssr += r * r;
  }
  const double dof = static_cast<double>(n - 2);
  const double s2 = ssr / dof;
  const double se_slope = std::sqrt(s2 / sxx);
  const double se_intercept = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  const boost::math::students_t dist(dof);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  fit.exponent = -slope;
  fit.exponent_stderr = se_slope;
  fit.constant = std::exp(intercept);
  fit.constant_ci_low = std::exp(intercept - q * se_intercept);
  fit.constant_ci_high = std::exp(intercept + q * se_intercept);
  return fit;
}

}  // namespace mbm

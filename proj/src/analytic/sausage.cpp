#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "mbm/analytic.hpp"
#include "mbm/errors.hpp"
#include "mbm/laplace.hpp"
#include "mbm/specfun.hpp"

namespace mbm {

namespace {

constexpr int kMaxVhatIndex = 16;
// Agreement required between the 14- and 16-term estimates of dV/dt. The
// derivative transform s V(s) - omega loses about one digit to cancellation.
constexpr double kRateInversionTolerance = 1e-5;

const BesselPolynomial& cached_poly(int n) {
  static const std::array<BesselPolynomial, kMaxVhatIndex + 2> table = [] {
    return [&]<std::size_t... I>(std::index_sequence<I...>) {
      return std::array<BesselPolynomial, kMaxVhatIndex + 2>{bessel_poly(static_cast<int>(I) - 1)...};
    }(std::make_index_sequence<kMaxVhatIndex + 2>{});
  }();
  return table[static_cast<std::size_t>(n + 1)];
}

void check_vhat_args(int n, double s) {
  if (n < 0 || n > kMaxVhatIndex) {
    throw DomainError("odd-dimension transform index n must be in [0, 16], got " + std::to_string(n));
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("transform argument s must be > 0");
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time t must be finite and >= 0");
}

void check_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("radius R must be finite and > 0");
}

bool has_closed_form(Dimension d) { return d.value() == 1 || d.value() == 3 || d.value() == 5; }

// V^1_d(tau) for d in {1, 3, 5}.
double unit_volume_closed(int d, double tau) {
  switch (d) {
    case 1:
      return 2.0 + std::sqrt(8.0 * tau / std::numbers::pi);
    case 3:
      return unit_ball_volume(Dimension(3)) *
             (1.0 + 3.0 * std::sqrt(2.0 / std::numbers::pi) * std::sqrt(tau) + 1.5 * tau);
    default:
      return unit_ball_volume(Dimension(5)) * (6.0 - 5.0 * erfcx(std::sqrt(0.5 * tau)) + 7.5 * tau);
  }
}

// dV^1_d/dtau for d in {1, 3, 5}, tau > 0.
double unit_rate_closed(int d, double tau) {
  switch (d) {
    case 1:
      return std::sqrt(2.0 / (std::numbers::pi * tau));
    case 3:
      return unit_ball_volume(Dimension(3)) *
             (1.5 * std::sqrt(2.0 / std::numbers::pi) / std::sqrt(tau) + 1.5);
    default: {
      const double y = std::sqrt(0.5 * tau);
      const double derfcx = 0.5 * erfcx(y) - 0.5 / (std::sqrt(std::numbers::pi) * y);
      return unit_ball_volume(Dimension(5)) * (-5.0 * derfcx + 7.5);
    }
  }
}

// Transform evaluator used for numerical inversion: Bessel polynomials in odd
// dimensions, the K quadrature in even ones.
TransformFn unit_transform(Dimension d) {
  if (d.is_odd() && (d.value() - 1) / 2 <= kMaxVhatIndex) {
    const int n = (d.value() - 1) / 2;
    return [n](double s) { return vhat_odd(n, s); };
  }
  return SausageTransform(d);
}

}  // namespace

SausageTransform::SausageTransform(Dimension d)
    : dim_(d), omega_(unit_ball_volume(d)), sigma_(sphere_surface(d)) {}

double SausageTransform::operator()(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("transform argument s must be > 0");
  const double a = std::sqrt(2.0 * s);
  const double nu = 0.5 * dim_.value();
  const double ratio = std::exp(log_bessel_k(nu, a) - log_bessel_k(nu - 1.0, a));
  return omega_ / s + sigma_ / std::sqrt(2.0 * s * s * s) * ratio;
}

SausageTransform sausage_transform(Dimension d) { return SausageTransform(d); }

double vhat_odd(int n, double s) {
  check_vhat_args(n, s);
  const double a = std::sqrt(2.0 * s);
  const double omega = unit_ball_volume(Dimension(2 * n + 1));
  // y_n(1/a) / y_{n-1}(1/a) = theta_n(a) / (a theta_{n-1}(a)), theta_k(a) = a^k y_k(1/a).
  const double num = cached_poly(n).reversed(a);
  const double den = cached_poly(n - 1).reversed(a);
  return omega / s * (1.0 + (2 * n + 1) * num / (a * a * den));
}

double vhat_odd_cf(int n, double s) {
  check_vhat_args(n, s);
  const double a = std::sqrt(2.0 * s);
  double h = 1.0;
  for (int k = 1; k <= n; ++k) h = (2 * k - 1) / a + 1.0 / h;
  const double omega = unit_ball_volume(Dimension(2 * n + 1));
  return omega / s * (1.0 + (2 * n + 1) / a * h);
}

SausageValue sausage_volume_detailed(Dimension d, double R, double t) {
  check_radius(R);
  check_time(t);
  const double scale = std::pow(R, d.value());
  const double tau = t / (R * R);
  if (has_closed_form(d)) return {scale * unit_volume_closed(d.value(), tau), 0.0, Provenance::ClosedForm};
  if (tau == 0.0) return {scale * unit_ball_volume(d), 0.0, Provenance::LaplaceInverted};
  const auto inv = invert_laplace_checked(unit_transform(d), tau);
  return {scale * inv.value, scale * inv.abs_difference, Provenance::LaplaceInverted};
}

double sausage_volume(Dimension d, double R, double t) { return sausage_volume_detailed(d, R, t).value; }

SausageValue sausage_volume_rate_detailed(Dimension d, double R, double t) {
  check_radius(R);
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("sausage growth rate needs t > 0");
  const double scale = std::pow(R, d.value() - 2);
  const double tau = t / (R * R);
  if (has_closed_form(d)) return {scale * unit_rate_closed(d.value(), tau), 0.0, Provenance::ClosedForm};
  const double omega = unit_ball_volume(d);
  const TransformFn f = unit_transform(d);
  // dV/dt has transform s V(s) - V(0).
  const auto inv = invert_laplace_checked([&](double s) { return s * f(s) - omega; }, tau,
                                          kRateInversionTolerance);
  return {scale * inv.value, scale * inv.abs_difference, Provenance::LaplaceInverted};
}

double sausage_volume_rate(Dimension d, double R, double t) {
  return sausage_volume_rate_detailed(d, R, t).value;
}

double sausage_growth(Dimension d, double t) {
  return sausage_volume(d, 1.0, t) / unit_ball_volume(d) - 1.0;
}

}  // namespace mbm

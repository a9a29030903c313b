#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mbm/errors.hpp"
#include "mbm/specfun.hpp"
#include "tanh_sinh.hpp"

namespace mbm {

namespace {

// Integrand exponent of K_nu(x): -x cosh t + log cosh(nu t).
struct KExponent {
  double nu;
  double x;

  double operator()(double t) const {
    const double a = nu * t;
    return -x * std::cosh(t) + a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
  }

  double slope(double t) const { return nu * std::tanh(nu * t) - x * std::sinh(t); }
};

// Integrand is kept above exp(-kDrop) of its peak.
constexpr double kDrop = 50.0;

// Location of the maximum. For nu^2 <= x the exponent is decreasing on t >= 0;
// otherwise the unique root of the slope lies in (0, asinh(nu / x)].
double peak_location(const KExponent& f) {
  if (f.nu * f.nu <= f.x) return 0.0;
  double lo = 0.0;
  double hi = std::asinh(f.nu / f.x);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + hi); ++i) {
    const double m = 0.5 * (lo + hi);
    (f.slope(m) > 0.0 ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

// First t >= start where f drops below level (f is decreasing past the peak).
double right_cutoff(const KExponent& f, double start, double level) {
  double step = 1.0;
  double lo = start;
  double hi = start + step;
  while (f(hi) > level) {
    lo = hi;
    step *= 2.0;
    hi = start + step;
  }
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (lo + hi);
    (f(m) > level ? lo : hi) = m;
  }
  return hi;
}

// Last t <= peak where f is still below level, or 0.
double left_cutoff(const KExponent& f, double peak, double level) {
  if (peak == 0.0 || f(0.0) > level) return 0.0;
  double lo = 0.0;
  double hi = peak;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (lo + hi);
    (f(m) > level ? hi : lo) = m;
  }
  return lo;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " requires a finite argument x > 0");
  }
}

double checked_exp(double log_value, const char* what) {
  static const double kLogMin = std::log(DBL_MIN);
  static const double kLogMax = std::log(DBL_MAX);
  if (log_value < kLogMin) {
    throw UnderflowError(std::string(what) + " underflows; use the log-scale variant",
                         log_value);
  }
  if (log_value > kLogMax) throw OverflowError(std::string(what) + " overflows");
  return std::exp(log_value);
}

}  // namespace

double log_bessel_k(double nu, double x) {
  require_positive(x, "bessel_k");
  if (!std::isfinite(nu)) throw DomainError("bessel_k requires a finite order");
  const KExponent f{std::abs(nu), x};
  const double peak = peak_location(f);
  const double fmax = f(peak);
  const double level = fmax - kDrop;
  const double t_lo = left_cutoff(f, peak, level);
  const double t_hi = right_cutoff(f, peak, level);

  auto g = [&](double t) { return std::exp(f(t) - fmax); };
  const auto& quad = detail::TanhSinh::instance();
  double integral = 0.0;
  // Split at the peak so each piece is monotone.
  if (peak > t_lo) integral += quad.integrate(g, t_lo, peak).value;
  integral += quad.integrate(g, peak, t_hi).value;
  return fmax + std::log(integral);
}

double bessel_k(double nu, double x) { return checked_exp(log_bessel_k(nu, x), "bessel_k"); }

double log_bessel_k_half(int n, double x) {
  require_positive(x, "bessel_k_half");
  if (n < 0) throw DomainError("bessel_k_half requires n >= 0");
  if (n > kMaxBesselPolyDegree) throw OverflowError("bessel_k_half supports n <= 33");
  static const std::vector<BesselPolynomial> table = [] {
    std::vector<BesselPolynomial> t;
    for (int m = 0; m <= kMaxBesselPolyDegree; ++m) t.push_back(bessel_poly(m));
    return t;
  }();
  const BesselPolynomial& y = table[static_cast<std::size_t>(n)];
  // y_n(1/x) = x^{-n} * reversed(x)
  return 0.5 * std::log(std::numbers::pi / 2) - x - (n + 0.5) * std::log(x) +
         std::log(y.reversed(x));
}

double bessel_k_half(int n, double x) {
  return checked_exp(log_bessel_k_half(n, x), "bessel_k_half");
}

}  // namespace mbm

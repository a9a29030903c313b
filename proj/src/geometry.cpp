#include "mbm/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mbm/errors.hpp"

namespace mbm {

Dimension::Dimension(int d) : d_(d) {
  if (d < 1 || d > kMaxDimension) {
    throw DomainError("dimension must be in [1, " + std::to_string(kMaxDimension) +
                      "], got " + std::to_string(d));
  }
}

void Dimension::require_odd(const char* operation) const {
  if (!is_odd()) {
    throw DomainError(std::string(operation) + " requires an odd dimension, got d = " +
                      std::to_string(d_));
  }
}

double unit_ball_volume(Dimension dim) {
  const int d = dim.value();
  const double pi = std::numbers::pi;
  double v = 1.0;
  if (d % 2 == 0) {
    const int n = d / 2;
    for (int k = 1; k <= n; ++k) v *= pi / k;
  } else {
    // 2^{n+1} pi^n / (2n+1)!! accumulated as prod_{k=1..n} 2 pi / (2k+1), times 2.
    const int n = (d - 1) / 2;
    v = 2.0;
    for (int k = 1; k <= n; ++k) v *= 2.0 * pi / (2 * k + 1);
  }
  return v;
}

double lanczos_gamma(double x) {
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (!(x > 0.0)) throw DomainError("lanczos_gamma requires x > 0");
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  const double z = x - 1.0;
  double a = p[0];
  for (std::size_t i = 1; i < p.size(); ++i) a += p[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  // t^{z+1/2} e^{-t} split in halves so it stays finite wherever Gamma does.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * a;
}

double unit_ball_volume_gamma(Dimension dim) {
  const double half_d = 0.5 * dim.value();
  return std::pow(std::numbers::pi, half_d) / lanczos_gamma(half_d + 1.0);
}

double sphere_surface(Dimension d) { return d.value() * unit_ball_volume(d); }

BallConstants ball_constants(Dimension d) {
  const double omega = unit_ball_volume(d);
  return {omega, d.value() * omega};
}

ExactInt odd_double_factorial(int n) {
  if (n < -1) throw DomainError("odd_double_factorial requires n >= -1");
  if (n > kMaxDoubleFactorialIndex) {
    throw OverflowError("odd_double_factorial supports n <= " +
                        std::to_string(kMaxDoubleFactorialIndex) + ", got " +
                        std::to_string(n));
  }
  ExactInt r = 1;
  for (int k = 1; k <= 2 * n + 1; k += 2) r *= k;
  return r;
}

}  // namespace mbm

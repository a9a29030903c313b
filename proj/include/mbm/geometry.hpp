#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mbm {

/// Exact integer type used for double factorials and Bessel polynomial
/// coefficients. Arithmetic overflow throws std::overflow_error.
using ExactInt = boost::multiprecision::checked_int256_t;

inline constexpr int kMaxDimension = 64;
inline constexpr int kMaxDoubleFactorialIndex = 33;

/// Spatial dimension d, 1 <= d <= kMaxDimension.
class Dimension {
 public:
  /// Throws DomainError outside [1, kMaxDimension].
  explicit Dimension(int d);

  int value() const noexcept { return d_; }
  bool is_odd() const noexcept { return d_ % 2 == 1; }

  /// Rejects even dimensions for operations that only exist for odd d.
  void require_odd(const char* operation) const;

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

struct BallConstants {
  double omega_d;    // volume of the unit ball
  double sigma_dm1;  // surface measure of the unit sphere, d * omega_d
};

/// Volume of the unit ball, from the parity-split closed forms
///   omega_{2n} = pi^n / n!,   omega_{2n+1} = 2^{n+1} pi^n / (2n+1)!!
double unit_ball_volume(Dimension d);

/// Same quantity through pi^{d/2} / Gamma(d/2 + 1), with Gamma from a Lanczos
/// approximation. Kept as an independent cross-check of unit_ball_volume.
double unit_ball_volume_gamma(Dimension d);

double sphere_surface(Dimension d);

BallConstants ball_constants(Dimension d);

/// (2n+1)!! = 1 * 3 * ... * (2n+1) for 0 <= n <= 33. Throws OverflowError
/// beyond the supported index. By convention (-1)!! = 1, i.e. n = -1 is
/// accepted and yields 1.
ExactInt odd_double_factorial(int n);

/// Lanczos approximation (g = 7, 9 terms) of Gamma(x) for x > 0.
double lanczos_gamma(double x);

}  // namespace mbm

#pragma once

#include <span>
#include <string>
#include <vector>

#include "mbm/geometry.hpp"

namespace mbm {

// ---------------------------------------------------------------------------
// Modified Bessel function of the second kind.
//
// Evaluated from K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt with
// tanh-sinh quadrature. The integrand is normalized by its maximum so the
// routine works in log scale; K_nu = K_{-nu}.
// ---------------------------------------------------------------------------

/// log K_nu(x) for x > 0. Never under- or overflows for finite input.
double log_bessel_k(double nu, double x);

/// K_nu(x). Throws DomainError for x <= 0, UnderflowError when the value is
/// below the smallest normal double, OverflowError when it exceeds DBL_MAX.
double bessel_k(double nu, double x);

/// K_{n+1/2}(x) = sqrt(pi/2) e^{-x} / sqrt(x) * y_n(1/x) for 0 <= n <= 33.
double bessel_k_half(int n, double x);

/// log K_{n+1/2}(x), closed form.
double log_bessel_k_half(int n, double x);

// ---------------------------------------------------------------------------
// Bessel polynomials y_n(x) = sum_k (n+k)! / ((n-k)! k! 2^k) x^k.
// ---------------------------------------------------------------------------

inline constexpr int kMaxBesselPolyDegree = 33;

class BesselPolynomial {
 public:
  /// Takes ownership of exact coefficients c_0..c_n; degree is size - 1, or -1
  /// for the constant polynomial y_{-1} = 1 (pass degree explicitly).
  BesselPolynomial(int degree, std::vector<ExactInt> coeffs);

  int degree() const noexcept { return degree_; }
  std::span<const ExactInt> coefficients() const noexcept { return coeffs_; }

  /// y_n(x) by Horner's rule in double precision.
  double operator()(double x) const;

  /// a^n y_n(1/a), the reverse polynomial. Stable for small a where y_n(1/a)
  /// itself would overflow. For the degree -1 convention this is 1/a.
  double reversed(double a) const;

  /// Closed form of K_{n+1/2}(x), e.g.
  /// "K_{5/2}(x) = sqrt(pi/2) e^{-x} / x^{5/2} (x^2 + 3x + 3)".
  std::string half_order_closed_form() const;

  friend bool operator==(const BesselPolynomial& a, const BesselPolynomial& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int degree_;
  std::vector<ExactInt> coeffs_;
  std::vector<double> coeffs_fp_;
};

/// Sum-formula construction. -1 <= n <= 33; n < -1 is a DomainError and
/// n > 33 an OverflowError.
BesselPolynomial bessel_poly(int n);

/// Three-term recursion y_n = (2n-1) x y_{n-1} + y_{n-2}, y_{-1} = y_0 = 1.
BesselPolynomial bessel_poly_recursive(int n);

// ---------------------------------------------------------------------------
// Error functions, standard convention:
//   erfc(x) = 2/sqrt(pi) int_x^inf exp(-u^2) du,   erfcx(x) = exp(x^2) erfc(x).
// Rational Chebyshev approximations (W. J. Cody, 1969).
// ---------------------------------------------------------------------------

double erfc(double x);
double erfcx(double x);

}  // namespace mbm

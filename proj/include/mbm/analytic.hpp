#pragma once

#include <span>
#include <vector>

#include "mbm/geometry.hpp"
#include "mbm/model.hpp"
#include "mbm/survival_curve.hpp"

namespace mbm {

// Time is in units where each coordinate of the Brownian motion has variance t;
// lengths are in the units of R and intensities per unit volume.

/// E[exp(-s T)] for T the hitting time of the ball of radius R by a
/// d-dimensional Bessel process started at rho >= R:
///   (rho/R)^{-b} K_b(rho sqrt(2s)) / K_b(R sqrt(2s)),  b = d/2 - 1.
/// rho < R is a DomainError (the caller handles the interior case).
double bessel_hitting_laplace(double rho, double R, Dimension d, double s);

/// Laplace transform s -> \hat V^1_d(s) of the expected volume of the Wiener
/// sausage of unit radius:
///   omega_d / s + sigma_{d-1} / sqrt(2 s^3) * K_{d/2}(sqrt(2s)) / K_{d/2-1}(sqrt(2s)).
/// Evaluated through the general Bessel K quadrature for every d.
class SausageTransform {
 public:
  explicit SausageTransform(Dimension d);

  Dimension dim() const noexcept { return dim_; }
  double operator()(double s) const;

 private:
  Dimension dim_;
  double omega_;
  double sigma_;
};

SausageTransform sausage_transform(Dimension d);

/// \hat V^1_{2n+1}(s) from Bessel polynomials, 0 <= n <= 16:
///   omega/s * [1 + (2n+1)/sqrt(2s) * y_n(1/sqrt(2s)) / y_{n-1}(1/sqrt(2s))].
double vhat_odd(int n, double s);

/// Same transform through the ratio recursion H_n = (2n-1)/sqrt(2s) + 1/H_{n-1},
/// H_0 = 1, which unrolls into a continued fraction.
double vhat_odd_cf(int n, double s);

struct EvalOptions {
  /// Allow Brownian survival in even dimensions through numerical Laplace
  /// inversion (no closed form exists there).
  bool allow_numeric_even = false;
};

struct SausageValue {
  double value;
  double abs_error;  // 0 for closed forms
  Provenance provenance;
};

/// Expected volume V^R_d(t) of the Wiener sausage of radius R. Closed forms
/// for d = 1, 3, 5; Gaver-Stehfest inversion of the transform otherwise.
SausageValue sausage_volume_detailed(Dimension d, double R, double t);
double sausage_volume(Dimension d, double R, double t);

/// dV^R_d/dt at t > 0.
SausageValue sausage_volume_rate_detailed(Dimension d, double R, double t);
double sausage_volume_rate(Dimension d, double R, double t);

/// g_d(t) = V^1_d(t) / omega_d - 1, the normalized growth of the sausage.
double sausage_growth(Dimension d, double t);

/// P(S > t). Brownian: exp(-lambda V^R(t)); inertial:
/// exp(-lambda omega_d R^d) exp(-lambda omega_{d-1} R^{d-1} E|v| t) with
/// omega_0 = 1, and 0 for every t >= 0 when E|v| is infinite.
double survival(const ModelSpec& spec, double t, EvalOptions options = {});

/// Survival value together with its provenance and error estimate.
SausageValue survival_detailed(const ModelSpec& spec, double t, EvalOptions options = {});

SurvivalCurve survival_curve(const ModelSpec& spec, std::span<const double> grid,
                             EvalOptions options = {});

/// Provenance that survival() uses for this model.
Provenance survival_provenance(const ModelSpec& spec, EvalOptions options = {});

/// -d/dt log P(S > t) = lambda dV^R/dt for t > 0 (inertial: constant
/// lambda omega_{d-1} R^{d-1} E|v|). Rejects the infinite-mean inertial case.
double hazard_rate(const ModelSpec& spec, double t, EvalOptions options = {});

/// Leading large-t behaviour of log P(S > t) for Brownian models:
///   d >= 3: -lambda omega_d d(d-2)/2 R^{d-2} t
///   d == 2: -2 pi lambda t / log(t / R^2)      (requires t > R^2)
/// d = 1 is a DomainError.
double survival_asymptotic(const ModelSpec& spec, double t);

/// Derivative of -survival_asymptotic with respect to t.
double hazard_asymptotic(const ModelSpec& spec, double t);

struct ExpectationResult {
  enum class Method { Exact, Quadrature, Degenerate };
  double value;
  double abs_error;
  Method method;
};

/// E S. Exact for Brownian d = 1 and for inertial models; infinite-mean
/// inertial speeds give the degenerate value 0; everything else integrates
/// the survival function.
ExpectationResult expected_detection_time(const ModelSpec& spec, EvalOptions options = {});

/// E S = int_0^inf P(S > t) dt by adaptive Gauss-Kronrod on [0, T*] with
/// P(S > T*) < 1e-12, plus a tail term. Available for every branch.
ExpectationResult expected_detection_time_quadrature(const ModelSpec& spec,
                                                     EvalOptions options = {});

/// Least-squares fit of log E S = log c - p log R over the given radii.
struct SmallRadiusFit {
  double exponent;         // p
  double exponent_stderr;
  double constant;         // c
  double constant_ci_low;  // 95% interval for c
  double constant_ci_high;
  std::vector<double> radii;
  std::vector<double> expectations;
};

SmallRadiusFit fit_small_radius_law(const ModelSpec& base, std::span<const double> radii,
                                    EvalOptions options = {});

}  // namespace mbm

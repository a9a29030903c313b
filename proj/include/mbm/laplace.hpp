#pragma once

#include <functional>
#include <span>

namespace mbm {

using TransformFn = std::function<double(double)>;

struct InversionResult {
  double value;           // 16-term Gaver-Stehfest estimate
  double lower_order;     // 14-term estimate
  double abs_difference;  // |value - lower_order|, used as the error estimate
};

inline constexpr int kStehfestTerms = 16;
inline constexpr double kDefaultInversionTolerance = 1e-6;

/// Stehfest weights V_1..V_n for an even number of terms n (exact rational
/// arithmetic, rounded to double once). Supported n: 2..20.
std::span<const double> stehfest_weights(int n);

/// Single Gaver-Stehfest estimate of f(t) from F(s) sampled at s = k ln2 / t.
double stehfest_estimate(const TransformFn& transform, double t, int n_terms);

/// Inverts F at t > 0 with 16 terms and compares against 14 terms. Throws
/// ConvergenceError if the two differ by more than rel_tol relative to the
/// 16-term value (absolute when that value is 0).
InversionResult invert_laplace_checked(const TransformFn& transform, double t,
                                       double rel_tol = kDefaultInversionTolerance);

/// Value-only convenience wrapper of invert_laplace_checked.
double invert_laplace(const TransformFn& transform, double t,
                      double rel_tol = kDefaultInversionTolerance);

}  // namespace mbm

#include "mbm/laplace.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mbm/errors.hpp"

namespace mbm {

namespace {

constexpr int kMaxTerms = 20;

std::vector<double> compute_weights(int n) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  auto fact = [](int m) {
    cpp_int f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  const int half = n / 2;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    cpp_rational sum = 0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      cpp_int num = fact(2 * j);
      cpp_int jm = 1;
      for (int i = 0; i < half; ++i) jm *= j;
      num *= jm;
      const cpp_int den = fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k);
      sum += cpp_rational(num, den);
    }
    if ((k + half) % 2 == 1) sum = -sum;
    v.push_back(sum.convert_to<double>());
  }
  return v;
}

}  // namespace

std::span<const double> stehfest_weights(int n) {
  if (n < 2 || n > kMaxTerms || n % 2 != 0) {
    throw DomainError("Stehfest term count must be even and in [2, 20]");
  }
  static const std::array<std::vector<double>, kMaxTerms / 2> table = [] {
    std::array<std::vector<double>, kMaxTerms / 2> t;
    for (int m = 1; m <= kMaxTerms / 2; ++m) t[static_cast<std::size_t>(m - 1)] = compute_weights(2 * m);
    return t;
  }();
  return table[static_cast<std::size_t>(n / 2 - 1)];
}

double stehfest_estimate(const TransformFn& transform, double t, int n_terms) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("Laplace inversion requires t > 0");
  const auto weights = stehfest_weights(n_terms);
  const double a = std::numbers::ln2 / t;
  double sum = 0.0;
  for (int k = 1; k <= n_terms; ++k) {
    sum += weights[static_cast<std::size_t>(k - 1)] * transform(k * a);
  }
  return a * sum;
}

InversionResult invert_laplace_checked(const TransformFn& transform, double t, double rel_tol) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("Laplace inversion requires t > 0");
  // Both orders share the abscissae k ln2 / t, k <= 14, so evaluate F once.
  const double a = std::numbers::ln2 / t;
  std::array<double, kStehfestTerms> samples{};
  for (int k = 1; k <= kStehfestTerms; ++k) samples[static_cast<std::size_t>(k - 1)] = transform(k * a);
  auto combine = [&](int n) {
    const auto w = stehfest_weights(n);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += w[static_cast<std::size_t>(k)] * samples[static_cast<std::size_t>(k)];
    return a * s;
  };
  const double hi = combine(kStehfestTerms);
  const double lo = combine(kStehfestTerms - 2);
  const double diff = std::abs(hi - lo);
  const double scale = hi != 0.0 ? std::abs(hi) : 1.0;
  if (!std::isfinite(hi) || diff > rel_tol * scale) {
    std::ostringstream os;
    os << "Gaver-Stehfest did not converge at t = " << t << ": 16-term " << hi << " vs 14-term "
       << lo << " (tolerance " << rel_tol << ')';
    throw ConvergenceError(os.str());
  }
  return {hi, lo, diff};
}

double invert_laplace(const TransformFn& transform, double t, double rel_tol) {
  return invert_laplace_checked(transform, t, rel_tol).value;
}

}  // namespace mbm

#include <sstream>
#include <string>

#include "mbm/errors.hpp"
#include "mbm/specfun.hpp"

namespace mbm {

namespace {

void check_degree(int n) {
  if (n < -1) throw DomainError("Bessel polynomial degree must be >= -1");
  if (n > kMaxBesselPolyDegree) {
    throw OverflowError("Bessel polynomial degree must be <= " +
                        std::to_string(kMaxBesselPolyDegree));
  }
}

}  // namespace

BesselPolynomial::BesselPolynomial(int degree, std::vector<ExactInt> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  const std::size_t expected = degree < 0 ? 1 : static_cast<std::size_t>(degree) + 1;
  if (coeffs_.size() != expected) {
    throw DomainError("Bessel polynomial coefficient count does not match degree");
  }
  coeffs_fp_.reserve(coeffs_.size());
  for (const ExactInt& c : coeffs_) coeffs_fp_.push_back(c.convert_to<double>());
}

double BesselPolynomial::operator()(double x) const {
  double r = coeffs_fp_.back();
  for (std::size_t k = coeffs_fp_.size() - 1; k-- > 0;) r = r * x + coeffs_fp_[k];
  return r;
}

double BesselPolynomial::reversed(double a) const {
  if (degree_ < 0) return 1.0 / a;
  double r = coeffs_fp_.front();
  for (std::size_t k = 1; k < coeffs_fp_.size(); ++k) r = r * a + coeffs_fp_[k];
  return r;
}

std::string BesselPolynomial::half_order_closed_form() const {
  const int n = degree_ < 0 ? 0 : degree_;
  std::ostringstream os;
  os << "K_{" << 2 * n + 1 << "/2}(x) = sqrt(pi/2) e^{-x} / x^{" << 2 * n + 1 << "/2}";
  if (n == 0) return os.str();
  // x^n y_n(1/x) = sum_k c_k x^{n-k}, printed from the highest power down.
  os << " (";
  for (int k = 0; k <= n; ++k) {
    const int power = n - k;
    if (k > 0) os << " + ";
    const ExactInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c != 1 || power == 0) os << c;
    if (power >= 1) os << 'x';
    if (power >= 2) os << '^' << power;
  }
  os << ')';
  return os.str();
}

BesselPolynomial bessel_poly(int n) {
  check_degree(n);
  if (n < 0) return BesselPolynomial(-1, {ExactInt(1)});
  using boost::multiprecision::cpp_int;
  auto factorial = [](int m) {
    cpp_int f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  std::vector<ExactInt> c;
  c.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const cpp_int num = factorial(n + k);
    const cpp_int den = factorial(n - k) * factorial(k) * (cpp_int(1) << k);
    c.emplace_back(ExactInt(num / den));
  }
  return BesselPolynomial(n, std::move(c));
}

BesselPolynomial bessel_poly_recursive(int n) {
  check_degree(n);
  std::vector<ExactInt> prev2{1};  // y_{-1}
  if (n < 0) return BesselPolynomial(-1, prev2);
  std::vector<ExactInt> prev1{1};  // y_0
  for (int m = 1; m <= n; ++m) {
    std::vector<ExactInt> next(static_cast<std::size_t>(m) + 1, ExactInt(0));
    for (std::size_t k = 0; k < prev1.size(); ++k) next[k + 1] += (2 * m - 1) * prev1[k];
    for (std::size_t k = 0; k < prev2.size(); ++k) next[k] += prev2[k];
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return BesselPolynomial(n, std::move(prev1));
}

}  // namespace mbm

#include <cmath>

#include "mbm/analytic.hpp"
#include "mbm/errors.hpp"
#include "mbm/specfun.hpp"

namespace mbm {

double bessel_hitting_laplace(double rho, double R, Dimension d, double s) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("hitting transform: R must be > 0");
  if (!(rho >= R) || !std::isfinite(rho)) {
    throw DomainError("hitting transform: rho must be >= R (inside the ball the hitting time is 0)");
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("hitting transform: s must be > 0");
  if (rho == R) return 1.0;
  const double b = 0.5 * d.value() - 1.0;
  const double a = std::sqrt(2.0 * s);
  const double log_ratio = -b * std::log(rho / R) + log_bessel_k(b, rho * a) - log_bessel_k(b, R * a);
  return std::exp(std::min(log_ratio, 0.0));
}

}  // namespace mbm

#include <cmath>
#include <limits>

#include "mbm/errors.hpp"
#include "mbm/simulate.hpp"

namespace mbm {

CompareReport compare(const SurvivalCurve& empirical, const SurvivalCurve& analytic,
                      const CompareOptions& options) {
  const std::size_t m = empirical.size();
  if (m != analytic.size() || m != empirical.values.size() || m != analytic.values.size()) {
    throw DomainError("compare: curves have different grids");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double scale = std::max(1.0, std::abs(analytic.times[i]));
    if (std::abs(empirical.times[i] - analytic.times[i]) > 1e-12 * scale) {
      throw DomainError("compare: curves have different grids");
    }
  }
  if (empirical.sample_size == 0) throw DomainError("compare: empirical curve has no sample size");
  if (!options.bias_band.empty() && options.bias_band.size() != m) {
    throw DomainError("compare: bias band size does not match the grid");
  }
  const auto n = static_cast<double>(empirical.sample_size);
  CompareReport report{0.0, 0.0, 0.0, true, {}};
  std::size_t beyond = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double p = analytic.values[i];
    const double diff = empirical.values[i] - p;
    const double band = options.bias_band.empty() ? 0.0 : options.bias_band[i];
    const double excess = std::max(0.0, std::abs(diff) - band);
    const double se = std::sqrt(p * (1.0 - p) / n);
    double z = 0.0;
    if (excess > 0.0) z = se > 0.0 ? excess / se : std::numeric_limits<double>::infinity();
    z = std::copysign(z, diff);
    report.z.push_back(z);
    report.max_abs_diff = std::max(report.max_abs_diff, std::abs(diff));
    report.max_z = std::max(report.max_z, std::abs(z));
    if (std::abs(z) > options.z_threshold) ++beyond;
  }
  report.frac_gt = m == 0 ? 0.0 : static_cast<double>(beyond) / static_cast<double>(m);
  report.pass = report.frac_gt <= options.max_fraction;
  return report;
}

}  // namespace mbm

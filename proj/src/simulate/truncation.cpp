#include <cmath>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "mbm/errors.hpp"
#include "mbm/simulate.hpp"

namespace mbm {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kRelativeTolerance = 1e-12;
constexpr double kRunawayDisplacement = 1e15;

// Upper Gaussian quantile: P(Z > q) = p.
double normal_upper_quantile(double p) { return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p); }

template <class Step>
std::optional<double> fixed_point(Step step) {
  double D = step(0.0);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double next = step(D);
    if (!std::isfinite(next) || next > kRunawayDisplacement) return std::nullopt;
    if (std::abs(next - D) <= kRelativeTolerance * next) return next;
    D = next;
  }
  return std::nullopt;
}

}  // namespace

TruncationResult truncation_radius(const ModelSpec& spec, double t_max, double epsilon) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be finite and > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const int d = spec.d();
  const double R = spec.radius();
  const double volume_scale = spec.lambda() * unit_ball_volume(spec.dim());
  auto germs = [&](double D) { return volume_scale * std::pow(R + D, d); };
  auto per_germ_budget = [&](double D) { return epsilon / std::max(germs(D), 1.0); };

  TruncationResult out{};
  if (spec.is_brownian()) {
    // P(max_{s <= t} |xi(s)| > D) <= sum over coordinates of
    // P(max |xi_i| > D / sqrt(d)) <= 4 d Pbar(D / sqrt(d t)).
    const double scale = std::sqrt(d * t_max);
    const auto D = fixed_point([&](double D) {
      return scale * normal_upper_quantile(per_germ_budget(D) / (4.0 * d));
    });
    if (!D) throw ConvergenceError("Brownian truncation radius did not converge");
    out.displacement = *D;
  } else {
    const SpeedLaw& law = spec.speed_law();
    std::optional<double> D;
    if (!law.has_infinite_mean()) {
      D = fixed_point([&](double D) { return t_max * law.upper_quantile(per_germ_budget(D)); });
    }
    if (!D) {
      out.displacement = t_max * law.upper_quantile(epsilon);
      std::ostringstream os;
      os << "heavy-tail: speed law " << law.describe()
         << " admits no finite window for the truncation budget; using the (1 - epsilon) speed "
            "quantile, so the result is a lower bound on detection probability";
      out.warning = os.str();
    } else {
      out.displacement = *D;
    }
  }
  out.radius = R + out.displacement;
  out.expected_germs = germs(out.displacement);
  return out;
}

}  // namespace mbm

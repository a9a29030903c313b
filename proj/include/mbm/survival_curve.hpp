#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mbm {

/// Where the values of a survival curve come from.
enum class Provenance { ClosedForm, LaplaceInverted, Asymptotic, Empirical };

std::string_view to_string(Provenance p);

/// Inverse of to_string; throws DomainError on unknown names.
Provenance parse_provenance(std::string_view name);

/// Tabulated P(S > t) on an increasing time grid.
struct SurvivalCurve {
  std::vector<double> times;
  std::vector<double> values;
  Provenance provenance = Provenance::ClosedForm;
  /// Per-point standard error (empirical) or error estimate (inverted);
  /// empty when the values are exact.
  std::vector<double> std_errors;
  /// Number of Monte Carlo trials behind an empirical curve, 0 otherwise.
  std::size_t sample_size = 0;

  std::size_t size() const noexcept { return times.size(); }

  /// Throws DomainError unless times are increasing and nonnegative, values are
  /// in [0, 1] and nonincreasing, and std_errors is empty or matches in size.
  void validate() const;
};

}  // namespace mbm

#include "mbm/survival_curve.hpp"

#include <cmath>

#include "mbm/errors.hpp"

namespace mbm {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm:
      return "closed-form";
    case Provenance::LaplaceInverted:
      return "laplace-inverted";
    case Provenance::Asymptotic:
      return "asymptotic";
    case Provenance::Empirical:
      return "empirical";
  }
  return "unknown";
}

Provenance parse_provenance(std::string_view name) {
  for (auto p : {Provenance::ClosedForm, Provenance::LaplaceInverted, Provenance::Asymptotic,
                 Provenance::Empirical}) {
    if (to_string(p) == name) return p;
  }
  throw DomainError("unknown provenance '" + std::string(name) + "'");
}

void SurvivalCurve::validate() const {
  if (values.size() != times.size()) throw DomainError("survival curve: times/values size mismatch");
  if (!std_errors.empty() && std_errors.size() != times.size()) {
    throw DomainError("survival curve: std_errors size mismatch");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw DomainError("survival curve: times must be finite and >= 0");
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("survival curve: times must increase");
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw DomainError("survival curve: values must lie in [0, 1]");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw DomainError("survival curve: values must be nonincreasing");
    }
  }
}

}  // namespace mbm

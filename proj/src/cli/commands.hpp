#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbm/model.hpp"

namespace mbm::cli {

/// Help footer shared by every subcommand.
extern const char* const kUnits;

/// Streams available to a running subcommand.
struct Context {
  std::ostream* out;
  std::ostream* err;
};

/// Registered subcommand bodies run after parsing succeeds, so every flag is
/// validated before any computation starts.
using Action = std::function<void(Context&)>;

struct Registry {
  std::vector<std::pair<CLI::App*, Action>> actions;
};

/// Model flags shared by analytic, expectation and simulate.
struct ModelFlags {
  std::string model = "brownian";
  int dim = 3;
  double lambda = 1.0;
  double radius = 1.0;
  std::optional<double> mean_speed;
  std::optional<std::string> speed_law;

  void add_to(CLI::App& app, bool with_mean_speed);
  ModelSpec build() const;
};

/// Output destination flag; "-" is standard output.
struct OutputFlag {
  std::string path = "-";

  void add_to(CLI::App& app);
  /// Runs body with the chosen stream.
  void write(Context& ctx, const std::function<void(std::ostream&)>& body) const;
};

std::vector<double> linear_grid(double tmin, double tmax, int points);

void register_analytic_commands(CLI::App& app, Registry& registry);
void register_simulate_commands(CLI::App& app, Registry& registry);

}  // namespace mbm::cli

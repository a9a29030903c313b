#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "mbm/cli.hpp"
#include "mbm/errors.hpp"

namespace mbm {

namespace cli {

const char* const kUnits =
    "Units: lambda is per unit volume, R is in length units, and t is in time units in which each "
    "coordinate of the Brownian motion has variance t.";

void ModelFlags::add_to(CLI::App& app, bool with_mean_speed) {
  app.add_option("--model", model, "Motion model")
      ->check(CLI::IsMember({"brownian", "inertial"}))
      ->capture_default_str();
  app.add_option("--dim", dim, "Spatial dimension d")
      ->check(CLI::Range(1, kMaxDimension))
      ->required();
  app.add_option("--lambda", lambda, "Germ intensity (per unit volume)")
      ->check(CLI::PositiveNumber)
      ->required();
  app.add_option("--radius", radius, "Combined radius R = r + r0")->check(CLI::PositiveNumber)->required();
  if (with_mean_speed) {
    app.add_option("--mean-speed", mean_speed, "Inertial model: constant speed |v| = m")
        ->check(CLI::NonNegativeNumber);
  }
  app.add_option("--speed-law", speed_law, "Inertial model: const:c | exp:m | pareto:alpha,x_m");
}

ModelSpec ModelFlags::build() const {
  if (model == "brownian") {
    if (mean_speed || speed_law) throw DomainError("speed flags only apply to --model inertial");
    return ModelSpec::brownian(dim, lambda, radius);
  }
  if (speed_law && mean_speed) throw DomainError("give either --mean-speed or --speed-law, not both");
  if (speed_law) return ModelSpec::inertial(dim, lambda, radius, SpeedLaw::parse(*speed_law));
  if (mean_speed) return ModelSpec::inertial(dim, lambda, radius, SpeedLaw::constant(*mean_speed));
  throw DomainError("--model inertial needs --mean-speed or --speed-law");
}

void OutputFlag::add_to(CLI::App& app) {
  app.add_option("-o,--output", path, "Output file ('-' for standard output)")->capture_default_str();
}

void OutputFlag::write(Context& ctx, const std::function<void(std::ostream&)>& body) const {
  if (path == "-") {
    body(*ctx.out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw DomainError("cannot open output file '" + path + "'");
  body(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<double> linear_grid(double tmin, double tmax, int points) {
  if (points < 1) throw DomainError("--points must be >= 1");
  if (!(tmin >= 0.0) || !(tmax >= tmin)) throw DomainError("need 0 <= tmin <= tmax");
  if (points > 1 && !(tmax > tmin)) throw DomainError("need tmin < tmax for more than one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid.push_back(points == 1 ? tmin : tmin + (tmax - tmin) * i / (points - 1));
  }
  grid.back() = points == 1 ? tmin : tmax;
  return grid;
}

}  // namespace cli

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detection times in the mobile Boolean model: exact and asymptotic laws, "
               "Monte Carlo simulation and comparison.",
               "mbm"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "",
                 "key=value configuration file (subcommand options under a [subcommand] section); "
                 "command-line flags take precedence");
  cli::Registry registry;
  cli::register_analytic_commands(app, registry);
  cli::register_simulate_commands(app, registry);
  for (CLI::App* sub : app.get_subcommands({})) sub->footer(cli::kUnits);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  cli::Context ctx{&out, &err};
  try {
    for (auto& [sub, action] : registry.actions) {
      if (sub->parsed()) action(ctx);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const UnderflowError& e) {
    err << "error: " << e.what() << " (log value " << e.log_value() << ")\n";
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace mbm

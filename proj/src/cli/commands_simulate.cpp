#include <cmath>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "commands.hpp"
#include "mbm/csv.hpp"
#include "mbm/errors.hpp"
#include "mbm/simulate.hpp"

namespace mbm::cli {

namespace {

struct SimulateFlags {
  double tmax = 1.0;
  double dt = 1e-3;
  std::size_t trials = 1000;
  double eps = 1e-4;
  std::uint64_t seed = 0;
  int points = 21;
  unsigned threads = 1;
};

// Trial count implied by a binomial standard error p (1 - p) / n = se^2.
std::size_t infer_sample_size(const std::vector<double>& p, const std::vector<double>& se) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (se[i] > 0.0 && p[i] > 0.0 && p[i] < 1.0) {
      return static_cast<std::size_t>(std::llround(p[i] * (1.0 - p[i]) / (se[i] * se[i])));
    }
  }
  throw DomainError("cannot infer the number of trials from the empirical CSV; pass --trials");
}

void register_simulate(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("simulate", "Monte Carlo estimate of P(S > t)");
  auto model = std::make_shared<ModelFlags>();
  auto flags = std::make_shared<SimulateFlags>();
  auto output = std::make_shared<OutputFlag>();
  model->add_to(*sub, true);
  sub->add_option("--tmax", flags->tmax, "Censoring horizon t_max")->check(CLI::PositiveNumber)->required();
  sub->add_option("--dt", flags->dt, "Brownian step size (<= t_max / 100)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--trials", flags->trials, "Number of independent trials")
      ->check(CLI::PositiveNumber)
      ->required();
  sub->add_option("--eps", flags->eps, "Truncation-miss probability budget in (0, 1e-3]")
      ->check(CLI::Range(0.0, 1e-3))
      ->capture_default_str();
  sub->add_option("--seed", flags->seed, "Random seed (required for reproducibility)")->required();
  sub->add_option("--points", flags->points, "Grid points on [0, t_max]")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  sub->add_option("--threads", flags->threads, "Worker threads (0: all cores); output does not depend on it")
      ->capture_default_str();
  output->add_to(*sub);
  registry.actions.emplace_back(sub, [=](Context& ctx) {
    SimConfig config(model->build());
    config.t_max = flags->tmax;
    config.dt = flags->dt;
    config.n_trials = flags->trials;
    config.epsilon = flags->eps;
    config.seed = flags->seed;
    config.threads = flags->threads;
    config.grid = linear_grid(0.0, flags->tmax, flags->points);
    const SimOutcome outcome = empirical_survival(config);
    if (outcome.truncation.warning) *ctx.err << "warning: " << *outcome.truncation.warning << '\n';
    output->write(ctx, [&](std::ostream& os) {
      write_csv_row(os, {"t", "survival", "stderr", "n_censored"});
      const SurvivalCurve& c = outcome.curve;
      for (std::size_t i = 0; i < c.size(); ++i) {
        write_csv_row(os, {format_double(c.times[i]), format_double(c.values[i]),
                           format_double(c.std_errors[i]), std::to_string(outcome.n_censored)});
      }
    });
  });
}

void register_compare(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("compare", "Compare an empirical survival CSV with an analytic one");
  auto empirical_path = std::make_shared<std::string>();
  auto analytic_path = std::make_shared<std::string>();
  auto options = std::make_shared<CompareOptions>();
  auto trials = std::make_shared<std::size_t>(0);
  auto output = std::make_shared<OutputFlag>();
  sub->add_option("--empirical", *empirical_path, "CSV from simulate (t,survival,stderr,...)")->required();
  sub->add_option("--analytic", *analytic_path, "CSV from analytic (t,survival,...)")->required();
  sub->add_option("--z-threshold", options->z_threshold, "|z| beyond which a grid point counts as off")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--max-fraction", options->max_fraction, "Largest passing fraction of off points")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--trials", *trials, "Trials behind the empirical CSV (inferred from stderr if omitted)");
  output->add_to(*sub);
  registry.actions.emplace_back(sub, [=](Context& ctx) {
    const CsvTable emp = read_csv_file(*empirical_path);
    const CsvTable ana = read_csv_file(*analytic_path);
    SurvivalCurve e;
    e.provenance = Provenance::Empirical;
    e.times = emp.numeric_column("t");
    e.values = emp.numeric_column("survival");
    e.std_errors = emp.numeric_column("stderr");
    e.sample_size = *trials > 0 ? *trials : infer_sample_size(e.values, e.std_errors);
    SurvivalCurve a;
    a.times = ana.numeric_column("t");
    a.values = ana.numeric_column("survival");
    const CompareReport report = compare(e, a, *options);
    nlohmann::ordered_json j;
    j["max_abs_diff"] = report.max_abs_diff;
    j["max_z"] = report.max_z;
    j["frac_gt3"] = report.frac_gt;
    j["pass"] = report.pass;
    output->write(ctx, [&](std::ostream& os) { os << j.dump() << '\n'; });
  });
}

}  // namespace

void register_simulate_commands(CLI::App& app, Registry& registry) {
  register_simulate(app, registry);
  register_compare(app, registry);
}

}  // namespace mbm::cli

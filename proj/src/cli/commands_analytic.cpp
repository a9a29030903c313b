#include <cmath>
#include <limits>
#include <memory>
#include <ostream>

#include "commands.hpp"
#include "mbm/analytic.hpp"
#include "mbm/csv.hpp"
#include "mbm/errors.hpp"
#include "mbm/laplace.hpp"
#include "mbm/specfun.hpp"

namespace mbm::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GridFlags {
  double tmin = 0.0;
  double tmax = 1.0;
  int points = 11;

  void add_to(CLI::App& app) {
    app.add_option("--tmin", tmin, "First time of the grid")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--tmax", tmax, "Last time of the grid")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--points", points, "Number of grid points")->check(CLI::PositiveNumber)->capture_default_str();
  }
};

std::string_view method_name(ExpectationResult::Method m) {
  switch (m) {
    case ExpectationResult::Method::Exact:
      return "exact";
    case ExpectationResult::Method::Quadrature:
      return "quadrature";
    case ExpectationResult::Method::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

void register_analytic(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("analytic", "Survival P(S > t) and hazard rate on a time grid");
  auto model = std::make_shared<ModelFlags>();
  auto grid = std::make_shared<GridFlags>();
  auto even = std::make_shared<bool>(false);
  auto output = std::make_shared<OutputFlag>();
  model->add_to(*sub, true);
  grid->add_to(*sub);
  sub->add_flag("--even-numeric", *even,
                "Allow Brownian survival in even d by numerical Laplace inversion");
  output->add_to(*sub);
  registry.actions.emplace_back(sub, [=](Context& ctx) {
    const ModelSpec spec = model->build();
    const EvalOptions options{*even};
    const auto times = linear_grid(grid->tmin, grid->tmax, grid->points);
    const SurvivalCurve curve = survival_curve(spec, times, options);
    const bool degenerate = !spec.is_brownian() && spec.speed_law().has_infinite_mean();
    output->write(ctx, [&](std::ostream& os) {
      write_csv_row(os, {"t", "survival", "hazard", "provenance"});
      for (std::size_t i = 0; i < curve.size(); ++i) {
        const double t = curve.times[i];
        // The inertial hazard is constant; the Brownian one diverges at t = 0.
        double h = kInf;
        if (!degenerate && !spec.is_brownian()) h = hazard_rate(spec, 1.0, options);
        if (spec.is_brownian() && t > 0.0) h = hazard_rate(spec, t, options);
        write_csv_row(os, {format_double(t), format_double(curve.values[i]), format_double(h),
                           std::string(to_string(curve.provenance))});
      }
    });
  });
}

void register_asymptote(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("asymptote", "Leading large-t behaviour of log P(S > t), Brownian d >= 2");
  auto dim = std::make_shared<int>(3);
  auto lambda = std::make_shared<double>(1.0);
  auto radius = std::make_shared<double>(1.0);
  auto grid = std::make_shared<GridFlags>();
  auto output = std::make_shared<OutputFlag>();
  sub->add_option("--dim", *dim, "Spatial dimension d")->check(CLI::Range(1, kMaxDimension))->required();
  sub->add_option("--lambda", *lambda, "Germ intensity (per unit volume)")->check(CLI::PositiveNumber)->required();
  sub->add_option("--radius", *radius, "Combined radius R")->check(CLI::PositiveNumber)->required();
  grid->add_to(*sub);
  output->add_to(*sub);
  registry.actions.emplace_back(sub, [=](Context& ctx) {
    const ModelSpec spec = ModelSpec::brownian(*dim, *lambda, *radius);
    const auto times = linear_grid(grid->tmin, grid->tmax, grid->points);
    std::vector<double> values;
    for (double t : times) values.push_back(survival_asymptotic(spec, t));
    output->write(ctx, [&](std::ostream& os) {
      write_csv_row(os, {"t", "log_survival_asymptotic"});
      for (std::size_t i = 0; i < times.size(); ++i) {
        write_csv_row(os, {format_double(times[i]), format_double(values[i])});
      }
    });
  });
}

void register_invert(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("invert", "Numerical inversion of the unit sausage transform");
  auto dim = std::make_shared<int>(3);
  auto times = std::make_shared<std::vector<double>>();
  auto output = std::make_shared<OutputFlag>();
  sub->add_option("--dim", *dim, "Spatial dimension d")->check(CLI::Range(1, kMaxDimension))->required();
  sub->add_option("--t", *times, "Comma-separated times t > 0")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->required();
  output->add_to(*sub);
  registry.actions.emplace_back(sub, [=](Context& ctx) {
    const Dimension d(*dim);
    const SausageTransform transform(d);
    const bool closed = d.is_odd() && d.value() <= 5;
    std::vector<std::vector<std::string>> rows;
    for (double t : *times) {
      const double numeric = invert_laplace(transform, t);
      std::vector<std::string> row{format_double(t), format_double(numeric)};
      if (closed) {
        const double exact = sausage_volume(d, 1.0, t);
        row.push_back(format_double(exact));
        row.push_back(format_double(std::abs(numeric - exact) / exact));
      }
      rows.push_back(std::move(row));
    }
    output->write(ctx, [&](std::ostream& os) {
      std::vector<std::string> header{"t", "V1_d_numeric"};
      if (closed) {
        header.emplace_back("V1_d_closed");
        header.emplace_back("rel_err");
      }
      write_csv_row(os, header);
      for (const auto& row : rows) write_csv_row(os, row);
    });
  });
}

void register_besselpoly(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("besselpoly", "Coefficients of the Bessel polynomial y_n");
  auto n = std::make_shared<int>(0);
  auto closed_form = std::make_shared<bool>(false);
  auto output = std::make_shared<OutputFlag>();
  sub->add_option("--n", *n, "Degree, -1 <= n <= 33")->required();
  sub->add_flag("--closed-form", *closed_form, "Also print the closed form of K_{n+1/2}(x)");
  output->add_to(*sub);
  registry.actions.emplace_back(sub, [=](Context& ctx) {
    const BesselPolynomial y = bessel_poly(*n);
    std::vector<std::string> row{std::to_string(*n)};
    for (const auto& c : y.coefficients()) row.push_back(c.str());
    std::string form;
    if (*closed_form) {
      if (*n < 0) throw DomainError("closed form of K_{n+1/2} needs n >= 0");
      form = y.half_order_closed_form();
    }
    output->write(ctx, [&](std::ostream& os) {
      write_csv_row(os, row);
      if (*closed_form) os << form << '\n';
    });
  });
}

void register_expectation(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("expectation", "Expected detection time E S");
  auto model = std::make_shared<ModelFlags>();
  auto even = std::make_shared<bool>(false);
  auto output = std::make_shared<OutputFlag>();
  model->add_to(*sub, true);
  sub->add_flag("--even-numeric", *even,
                "Allow Brownian survival in even d by numerical Laplace inversion");
  output->add_to(*sub);
  registry.actions.emplace_back(sub, [=](Context& ctx) {
    const ExpectationResult r = expected_detection_time(model->build(), EvalOptions{*even});
    output->write(ctx, [&](std::ostream& os) {
      write_csv_row(os, {"expectation", "abs_error", "method"});
      write_csv_row(os, {format_double(r.value), format_double(r.abs_error), std::string(method_name(r.method))});
    });
  });
}

}  // namespace

void register_analytic_commands(CLI::App& app, Registry& registry) {
  register_analytic(app, registry);
  register_asymptote(app, registry);
  register_invert(app, registry);
  register_besselpoly(app, registry);
  register_expectation(app, registry);
}

}  // namespace mbm::cli

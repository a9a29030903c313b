#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbm/cli.hpp"
#include "mbm/csv.hpp"
#include "mbm/errors.hpp"
#include "support.hpp"

using namespace mbm;
using mbm::testing::Gen;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

CsvTable table(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mbm_cli_" + name);
}

}  // namespace

TEST_CASE("besselpoly prints the coefficients") {
  const Run r = run({"besselpoly", "--n", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "2,1,3,3\n");
  const Run closed = run({"besselpoly", "--n", "2", "--closed-form"});
  CHECK(closed.out.find("K_{5/2}(x) = sqrt(pi/2) e^{-x} / x^{5/2} (x^2 + 3x + 3)") != std::string::npos);
}

TEST_CASE("analytic inertial example") {
  const Run r = run({"analytic", "--model", "inertial", "--dim", "2", "--lambda", "1", "--radius", "1", "--mean-speed",
                     "1", "--tmin", "0", "--tmax", "1", "--points", "2"});
  REQUIRE(r.code == kExitOk);
  const CsvTable t = table(r.out);
  CHECK(t.header == std::vector<std::string>{"t", "survival", "hazard", "provenance"});
  REQUIRE(t.rows.size() == 2);
  const auto s = t.numeric_column("survival");
  CHECK(s[0] == doctest::Approx(std::exp(-std::numbers::pi)).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(std::exp(-std::numbers::pi - 2.0)).epsilon(1e-15));
  CHECK(t.rows[0][3] == "closed-form");
  // 17 significant digits.
  CHECK(t.rows[0][1].size() >= 18);
}

TEST_CASE("analytic Brownian output") {
  const Run r = run({"analytic", "--model", "brownian", "--dim", "1", "--lambda", "1", "--radius", "1", "--tmin", "0",
                     "--tmax", "2", "--points", "3"});
  REQUIRE(r.code == kExitOk);
  const CsvTable t = table(r.out);
  const auto h = t.numeric_column("hazard");
  CHECK(std::isinf(h[0]));
  CHECK(h[1] == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
  const Run even = run({"analytic", "--model", "brownian", "--dim", "2", "--lambda", "1", "--radius", "1", "--tmin",
                        "0", "--tmax", "1", "--points", "2"});
  CHECK(even.code == kExitDomain);
  const Run numeric = run({"analytic", "--model", "brownian", "--dim", "2", "--lambda", "1", "--radius", "1", "--tmin",
                           "0", "--tmax", "1", "--points", "2", "--even-numeric"});
  CHECK(numeric.code == kExitOk);
  CHECK(table(numeric.out).rows[1][3] == "laplace-inverted");
}

TEST_CASE("other analytic subcommands") {
  const Run a = run({"asymptote", "--dim", "3", "--lambda", "1", "--radius", "1", "--tmin", "1", "--tmax", "2",
                     "--points", "2"});
  REQUIRE(a.code == kExitOk);
  const CsvTable at = table(a.out);
  CHECK(at.header == std::vector<std::string>{"t", "log_survival_asymptotic"});
  CHECK(at.numeric_column("log_survival_asymptotic")[1] == doctest::Approx(-4.0 * std::numbers::pi).epsilon(1e-14));

  const Run inv = run({"invert", "--dim", "3", "--t", "0.5,2"});
  REQUIRE(inv.code == kExitOk);
  const CsvTable it = table(inv.out);
  CHECK(it.header == std::vector<std::string>{"t", "V1_d_numeric", "V1_d_closed", "rel_err"});
  for (double e : it.numeric_column("rel_err")) CHECK(e <= 1e-6);
  const Run inv4 = run({"invert", "--dim", "4", "--t", "1"});
  REQUIRE(inv4.code == kExitOk);
  CHECK(table(inv4.out).header == std::vector<std::string>{"t", "V1_d_numeric"});

  const Run e = run({"expectation", "--model", "brownian", "--dim", "1", "--lambda", "1", "--radius", "1"});
  REQUIRE(e.code == kExitOk);
  const CsvTable et = table(e.out);
  CHECK(et.numeric_column("expectation")[0] == doctest::Approx(std::numbers::pi / 4.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(et.rows[0][2] == "exact");
}

TEST_CASE("exit codes") {
  CHECK(run({"besselpoly", "--n", "40"}).code == kExitDomain);
  CHECK(run({"besselpoly", "--n", "-2"}).code == kExitDomain);
  CHECK(run({"analytic", "--model", "brownian", "--dim", "0", "--lambda", "1", "--radius", "1"}).code == kExitDomain);
  CHECK(run({"analytic", "--model", "brownian", "--dim", "3", "--lambda", "-1", "--radius", "1"}).code == kExitDomain);
  CHECK(run({"analytic", "--bogus"}).code == kExitDomain);
  CHECK(run({"nosuchcommand"}).code == kExitDomain);
  CHECK(run({}).code == kExitDomain);
  CHECK(run({"simulate", "--model", "brownian", "--dim", "1", "--lambda", "1", "--radius", "1", "--tmax", "1",
             "--eps", "0.01", "--seed", "1"})
            .code == kExitDomain);
  const Run conv = run({"invert", "--dim", "40", "--t", "1e-6"});
  CHECK(conv.code == kExitConvergence);
  CHECK(conv.err.find("did not converge") != std::string::npos);
}

TEST_CASE("help exits cleanly and states the units") {
  const Run top = run({"--help"});
  CHECK(top.code == kExitOk);
  for (const char* sub : {"analytic", "asymptote", "invert", "besselpoly", "expectation", "simulate", "compare"}) {
    const Run r = run({sub, "--help"});
    INFO(sub);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("Units") != std::string::npos);
  }
}

TEST_CASE("CSV numbers round-trip exactly") {
  Gen gen(47);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(gen.uniform(-1.0, 1.0), gen.integer(-1000, 1000));
    CHECK(parse_double(format_double(x)) == x);
  }
  for (double x : {0.0, -0.0, 5e-324, 1.7976931348623157e308, 0.1}) CHECK(parse_double(format_double(x)) == x);
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::isinf(parse_double("inf")));
  CHECK(std::isnan(parse_double(format_double(std::numeric_limits<double>::quiet_NaN()))));
  CHECK_THROWS_AS(parse_double("1.5x"), DomainError);
  CHECK_THROWS_AS(parse_double(""), DomainError);

  std::ostringstream os;
  write_csv_row(os, {"a", "b"});
  write_csv_row(os, {format_double(0.1), format_double(-2.5)});
  const CsvTable t = table(os.str());
  CHECK(t.numeric_column("a")[0] == 0.1);
  CHECK(t.numeric_column("b")[0] == -2.5);
  CHECK_THROWS_AS(t.column_index("c"), DomainError);
}

TEST_CASE("simulate output does not depend on the thread count") {
  const std::vector<std::string> base = {"simulate", "--model", "brownian", "--dim", "2", "--lambda", "0.5",
                                         "--radius", "0.5", "--tmax", "1", "--dt", "0.005", "--trials", "300",
                                         "--seed", "9", "--points", "6"};
  auto with_threads = [&](const char* n) {
    auto args = base;
    args.insert(args.end(), {"--threads", n});
    return run(args);
  };
  const Run one = with_threads("1");
  const Run four = with_threads("4");
  REQUIRE(one.code == kExitOk);
  CHECK(one.out == four.out);
  const CsvTable t = table(one.out);
  CHECK(t.header == std::vector<std::string>{"t", "survival", "stderr", "n_censored"});
  CHECK(t.rows.size() == 6);
}

TEST_CASE("simulate and compare through files") {
  const auto emp = temp_file("emp.csv");
  const auto ana = temp_file("ana.csv");
  const std::vector<std::string> model = {"--model", "inertial", "--dim", "2", "--lambda", "1", "--radius", "0.5",
                                          "--speed-law", "const:1"};
  std::vector<std::string> sim = {"simulate"};
  sim.insert(sim.end(), model.begin(), model.end());
  sim.insert(sim.end(), {"--tmax", "1", "--trials", "4000", "--seed", "3", "--points", "11", "-o", emp.string()});
  REQUIRE(run(sim).code == kExitOk);
  std::vector<std::string> an = {"analytic"};
  an.insert(an.end(), model.begin(), model.end());
  an.insert(an.end(), {"--tmin", "0", "--tmax", "1", "--points", "11", "-o", ana.string()});
  REQUIRE(run(an).code == kExitOk);

  const Run cmp = run({"compare", "--empirical", emp.string(), "--analytic", ana.string()});
  REQUIRE(cmp.code == kExitOk);
  const auto report = nlohmann::ordered_json::parse(cmp.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : report.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"max_abs_diff", "max_z", "frac_gt3", "pass"});
  CHECK(report["pass"] == true);

  const auto bad = temp_file("bad.csv");
  {
    std::ofstream f(bad);
    f << "t,survival\n0,1\n0.3,0.5\n";
  }
  CHECK(run({"compare", "--empirical", emp.string(), "--analytic", bad.string()}).code == kExitDomain);
  std::filesystem::remove(emp);
  std::filesystem::remove(ana);
  std::filesystem::remove(bad);
}

TEST_CASE("configuration file supplies and command line overrides options") {
  const auto cfg = temp_file("run.ini");
  {
    std::ofstream f(cfg);
    f << "[analytic]\nmodel=inertial\ndim=2\nlambda=1\nradius=1\nmean-speed=1\ntmin=0\ntmax=1\npoints=2\n";
  }
  const Run from_file = run({"--config", cfg.string(), "analytic"});
  REQUIRE(from_file.code == kExitOk);
  CHECK(table(from_file.out).numeric_column("survival")[1] ==
        doctest::Approx(std::exp(-std::numbers::pi - 2.0)).epsilon(1e-15));
  const Run override = run({"--config", cfg.string(), "analytic", "--lambda", "2"});
  REQUIRE(override.code == kExitOk);
  CHECK(table(override.out).numeric_column("survival")[0] ==
        doctest::Approx(std::exp(-2.0 * std::numbers::pi)).epsilon(1e-15));
  std::filesystem::remove(cfg);
}

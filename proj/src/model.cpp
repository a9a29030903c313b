#include "mbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mbm/errors.hpp"

namespace mbm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

SpeedLaw SpeedLaw::constant(double speed) {
  require(speed >= 0.0 && std::isfinite(speed), "constant speed must be finite and >= 0");
  return SpeedLaw(Constant{speed});
}

SpeedLaw SpeedLaw::exponential(double mean) {
  require(positive_finite(mean), "exponential speed mean must be > 0");
  return SpeedLaw(Exponential{mean});
}

SpeedLaw SpeedLaw::pareto(double shape, double scale) {
  require(positive_finite(shape), "Pareto shape must be > 0");
  require(positive_finite(scale), "Pareto scale must be > 0");
  return SpeedLaw(Pareto{shape, scale});
}

SpeedLaw SpeedLaw::empirical(std::vector<double> speeds) {
  require(!speeds.empty(), "empirical speed law needs at least one speed");
  for (double v : speeds) require(v >= 0.0 && std::isfinite(v), "speeds must be finite and >= 0");
  std::sort(speeds.begin(), speeds.end());
  return SpeedLaw(Empirical{std::move(speeds)});
}

SpeedLaw SpeedLaw::parse(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, "speed law must look like const:c, exp:m or pareto:a,xm");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == s.size() && !s.empty(), "bad number '" + s + "' in speed law '" + text + "'");
    return v;
  };
  if (kind == "const") return constant(number(args));
  if (kind == "exp") return exponential(number(args));
  if (kind == "pareto") {
    const auto comma = args.find(',');
    require(comma != std::string::npos, "pareto speed law needs pareto:alpha,x_m");
    return pareto(number(args.substr(0, comma)), number(args.substr(comma + 1)));
  }
  throw DomainError("unknown speed law '" + kind + "'");
}

double SpeedLaw::mean_speed() const {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.speed; },
          [](const Exponential& e) { return e.mean; },
          [](const Pareto& p) {
            return p.shape <= 1.0 ? std::numeric_limits<double>::infinity()
                                  : p.shape * p.scale / (p.shape - 1.0);
          },
          [](const Empirical& e) {
            double s = 0.0;
            for (double v : e.speeds) s += v;
            return s / static_cast<double>(e.speeds.size());
          },
      },
      kind_);
}

bool SpeedLaw::has_infinite_mean() const { return std::isinf(mean_speed()); }

double SpeedLaw::upper_quantile(double tail) const {
  require(tail > 0.0 && tail < 1.0, "tail probability must be in (0, 1)");
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.speed; },
          [&](const Exponential& e) { return -e.mean * std::log(tail); },
          [&](const Pareto& p) { return p.scale * std::pow(tail, -1.0 / p.shape); },
          [&](const Empirical& e) {
            // Smallest sample value with at most tail * n samples strictly above it.
            const auto n = e.speeds.size();
            const auto allowed = static_cast<std::size_t>(std::floor(tail * static_cast<double>(n)));
            return e.speeds[n - 1 - std::min(allowed, n - 1)];
          },
      },
      kind_);
}

double SpeedLaw::sample(double u) const {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.speed; },
          [&](const Exponential& e) { return -e.mean * std::log(u); },
          [&](const Pareto& p) { return p.scale * std::pow(u, -1.0 / p.shape); },
          [&](const Empirical& e) {
            const auto n = e.speeds.size();
            const auto i = std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
            return e.speeds[i];
          },
      },
      kind_);
}

std::string SpeedLaw::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Constant& c) { os << "const:" << c.speed; },
                 [&](const Exponential& e) { os << "exp:" << e.mean; },
                 [&](const Pareto& p) { os << "pareto:" << p.shape << ',' << p.scale; },
                 [&](const Empirical& e) { os << "empirical(" << e.speeds.size() << ')'; },
             },
             kind_);
  return os.str();
}

ModelSpec::ModelSpec(Dimension dim, double lambda, double radius, MotionModel motion)
    : dim_(dim), lambda_(lambda), radius_(radius), motion_(std::move(motion)) {
  require(positive_finite(lambda), "intensity lambda must be finite and > 0");
  require(positive_finite(radius), "radius R must be finite and > 0");
}

ModelSpec ModelSpec::brownian(int d, double lambda, double radius) {
  return ModelSpec(Dimension(d), lambda, radius, BrownianMotion{});
}

ModelSpec ModelSpec::inertial(int d, double lambda, double radius, SpeedLaw speed) {
  return ModelSpec(Dimension(d), lambda, radius, InertialMotion{std::move(speed)});
}

const SpeedLaw& ModelSpec::speed_law() const {
  const auto* inertial = std::get_if<InertialMotion>(&motion_);
  if (inertial == nullptr) throw DomainError("speed law requested for a Brownian model");
  return inertial->speed_law;
}

ModelSpec ModelSpec::with_radius(double radius) const {
  return ModelSpec(dim_, lambda_, radius, motion_);
}

ModelSpec ModelSpec::with_lambda(double lambda) const {
  return ModelSpec(dim_, lambda, radius_, motion_);
}

}  // namespace mbm

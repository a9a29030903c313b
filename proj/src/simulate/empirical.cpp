#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "mbm/errors.hpp"
#include "mbm/simulate.hpp"

namespace mbm {

namespace {

constexpr std::size_t kChunk = 64;

double run_trial(const SimConfig& config, double window, const BrownianGrid& grid, std::uint32_t trial,
                 Germ& germ) {
  const ModelSpec& spec = config.spec;
  const double R = spec.radius();
  GermStream germs(spec, window, config.seed, trial);
  if (germs.peek_distance() <= R) return 0.0;
  double best = kNeverDetected;
  while (germs.next(germ)) {
    double s;
    if (spec.is_brownian()) {
      const CounterRng lane(config.seed, trial, germ_lane(germ.index));
      s = detect_brownian(germ.position, R, grid, lane, std::min(best, config.t_max));
    } else {
      s = detect_inertial(germ.position, germ.velocity, R);
    }
    if (s <= config.t_max && s < best) best = s;
  }
  return best;
}

}  // namespace

void SimConfig::validate() const {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be finite and > 0");
  if (spec.is_brownian()) {
    if (!(dt > 0.0) || !(dt <= t_max / 100.0)) throw DomainError("dt must satisfy 0 < dt <= t_max / 100");
  }
  if (n_trials == 0 || n_trials > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("number of trials must be in [1, 2^32 - 1]");
  }
  if (!(epsilon > 0.0 && epsilon <= 1e-3)) throw DomainError("epsilon must lie in (0, 1e-3]");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= t_max)) throw DomainError("grid times must lie in [0, t_max]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("grid times must be increasing");
  }
  if (window_radius && !(*window_radius > spec.radius() && std::isfinite(*window_radius))) {
    throw DomainError("window radius must be finite and exceed R");
  }
}

double SimOutcome::atom_fraction() const {
  return times.empty() ? 0.0 : static_cast<double>(n_atom) / static_cast<double>(times.size());
}

SurvivalCurve empirical_curve(std::span<const double> times, std::span<const double> grid) {
  if (times.empty()) throw DomainError("empirical curve needs at least one trial");
  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  SurvivalCurve curve;
  curve.provenance = Provenance::Empirical;
  curve.sample_size = sorted.size();
  for (double t : grid) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    const double p = static_cast<double>(above) / n;
    curve.times.push_back(t);
    curve.values.push_back(p);
    curve.std_errors.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  curve.validate();
  return curve;
}

SimOutcome empirical_survival(const SimConfig& config) {
  config.validate();
  SimOutcome out;
  out.truncation = truncation_radius(config.spec, config.t_max, config.epsilon);
  if (config.window_radius) {
    out.truncation.radius = *config.window_radius;
    out.truncation.displacement = *config.window_radius - config.spec.radius();
    out.truncation.expected_germs = config.spec.lambda() * unit_ball_volume(config.spec.dim()) *
                                    std::pow(*config.window_radius, config.spec.d());
  }
  const double window = out.truncation.radius;
  const BrownianGrid grid = config.spec.is_brownian() ? BrownianGrid::from_step(config.t_max, config.dt)
                                                      : BrownianGrid{config.t_max, 0};
  out.times.assign(config.n_trials, kNeverDetected);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Germ germ{};
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= config.n_trials) return;
      const std::size_t end = std::min(begin + kChunk, config.n_trials);
      for (std::size_t i = begin; i < end; ++i) {
        out.times[i] = run_trial(config, window, grid, static_cast<std::uint32_t>(i), germ);
      }
    }
  };
  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         (config.n_trials + kChunk - 1) / kChunk)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (double s : out.times) {
    if (s == kNeverDetected) ++out.n_censored;
    if (s == 0.0) ++out.n_atom;
  }
  out.curve = empirical_curve(out.times, config.grid);
  return out;
}

}  // namespace mbm

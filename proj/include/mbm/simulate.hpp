#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbm/model.hpp"
#include "mbm/rng.hpp"
#include "mbm/survival_curve.hpp"

namespace mbm {

inline constexpr double kNeverDetected = std::numeric_limits<double>::infinity();

struct SimConfig {
  explicit SimConfig(ModelSpec model) : spec(std::move(model)) {}

  ModelSpec spec;
  double t_max = 1.0;
  /// Brownian step size; the path is resolved on the dyadic grid
  /// t_max / 2^L with the smallest L giving a step <= dt.
  double dt = 1e-3;
  std::size_t n_trials = 1000;
  /// Probability budget for missing a germ outside the simulation window.
  double epsilon = 1e-4;
  std::uint64_t seed = 0;
  /// Times at which the empirical survival curve is evaluated.
  std::vector<double> grid;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Replaces the computed truncation radius when set.
  std::optional<double> window_radius;

  /// Throws DomainError on invalid settings.
  void validate() const;
};

struct TruncationResult {
  double radius;          // R + displacement
  double displacement;    // D*
  double expected_germs;  // lambda omega_d radius^d
  /// Set when no finite budget guarantees coverage; the simulated survival is
  /// then an upper bound (detection probability a lower bound).
  std::optional<std::string> warning;
};

/// Window radius R + D* such that, by a union bound over the expected germ
/// count, the chance that some germ outside the window reaches the target
/// before t_max is at most epsilon.
TruncationResult truncation_radius(const ModelSpec& spec, double t_max, double epsilon);

struct Germ {
  std::uint32_t index;            // rank by distance, also the random lane
  double distance;                // |position|
  std::vector<double> position;
  std::vector<double> velocity;   // inertial models only
};

/// Sequential generator of the germs of one trial in increasing distance. The
/// k-th germ sits at volume coordinate lambda omega_d |x|^d equal to the k-th
/// arrival of a unit-rate Poisson process; its direction and speed come from
/// its own random lane, so the germ set of a larger window extends that of a
/// smaller one.
class GermStream {
 public:
  GermStream(const ModelSpec& spec, double window_radius, std::uint64_t seed, std::uint32_t trial);

  /// Distance of the next germ without generating it (inf past the window).
  double peek_distance() const noexcept { return next_distance_; }

  /// Writes the next germ into `germ` (reusing its buffers); false once the
  /// window is exhausted.
  bool next(Germ& germ);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint32_t trial() const noexcept { return trial_; }

 private:
  void advance();

  const ModelSpec* spec_;
  double window_radius_;
  std::uint64_t seed_;
  std::uint32_t trial_;
  CounterRng arrivals_;
  double volume_scale_;  // lambda omega_d
  double arrival_ = 0.0;
  double next_distance_ = 0.0;
  std::uint32_t next_index_ = 0;
  std::vector<double> scratch_;
};

/// Random lane holding germ k's draws (lane 0 is the trial's arrival stream).
inline std::uint32_t germ_lane(std::uint32_t index) noexcept { return index + 1; }

/// All germs of a Poisson process of intensity lambda inside the ball of
/// radius window_radius, in increasing distance from the origin.
std::vector<Germ> sample_germs(const ModelSpec& spec, double window_radius, std::uint64_t seed,
                               std::uint32_t trial);

/// First s >= 0 with |x + s v| <= R, or kNeverDetected.
double detect_inertial(std::span<const double> x, std::span<const double> v, double R);

/// Brownian path parameters shared by all germs of a run.
struct BrownianGrid {
  double t_max;
  int levels;  // finest step is t_max / 2^levels

  static BrownianGrid from_step(double t_max, double dt);
  double step() const noexcept;
};

/// First detection time of a Brownian germ started at x (|x| > R) before
/// `horizon` <= t_max, or kNeverDetected. The path is built by midpoint
/// refinement of Brownian bridges; the draws come from rng so the same lane
/// always produces the same path. On the finest grid a step from distance
/// a + R to b + R counts as a hit with the half-space bridge probability
/// exp(-2ab/h); the reported time is the end of that step.
double detect_brownian(std::span<const double> x, double R, const BrownianGrid& grid,
                       const CounterRng& rng, double horizon);

struct SimOutcome {
  /// Per-trial detection time; kNeverDetected when censored at t_max.
  std::vector<double> times;
  std::size_t n_censored = 0;
  std::size_t n_atom = 0;  // trials with S = 0
  TruncationResult truncation;
  SurvivalCurve curve;

  double atom_fraction() const;
};

/// Empirical survival curve (fraction of trials with S > t) and its binomial
/// standard errors on the given grid.
SurvivalCurve empirical_curve(std::span<const double> times, std::span<const double> grid);

/// Runs config.n_trials independent trials. Trial i uses the random streams
/// (seed, i, lane), so the outcome is identical for every thread count.
SimOutcome empirical_survival(const SimConfig& config);

struct CompareOptions {
  double z_threshold = 3.0;
  /// Largest fraction of grid points allowed beyond the threshold.
  double max_fraction = 0.1;
  /// Optional per-point allowance for systematic bias, subtracted from
  /// |empirical - analytic| before standardizing.
  std::vector<double> bias_band;
};

struct CompareReport {
  double max_abs_diff;
  double max_z;
  double frac_gt;  // fraction of points with |z| > z_threshold
  bool pass;
  std::vector<double> z;
};

/// Standardized differences z_i = (p_emp - p_ana) / sqrt(p_ana (1 - p_ana) / n)
/// with n = empirical.sample_size. Rejects grids that differ.
CompareReport compare(const SurvivalCurve& empirical, const SurvivalCurve& analytic,
                      const CompareOptions& options = {});

}  // namespace mbm

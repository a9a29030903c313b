#include <cmath>

#include "mbm/errors.hpp"
#include "mbm/simulate.hpp"

namespace mbm {

namespace {

// Scales v[0..n) to unit length; a zero vector becomes the first basis vector.
void normalize(double* v, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += v[i] * v[i];
  if (s == 0.0) {
    v[0] = 1.0;
    return;
  }
  const double inv = 1.0 / std::sqrt(s);
  for (int i = 0; i < n; ++i) v[i] *= inv;
}

}  // namespace

GermStream::GermStream(const ModelSpec& spec, double window_radius, std::uint64_t seed,
                       std::uint32_t trial)
    : spec_(&spec),
      window_radius_(window_radius),
      seed_(seed),
      trial_(trial),
      arrivals_(seed, trial, 0),
      volume_scale_(spec.lambda() * unit_ball_volume(spec.dim())),
      scratch_(static_cast<std::size_t>(2 * spec.d())) {
  advance();
}

void GermStream::advance() {
  arrival_ += arrivals_.exponential();
  const double r = std::pow(arrival_ / volume_scale_, 1.0 / spec_->d());
  next_distance_ = r <= window_radius_ ? r : kNeverDetected;
}

bool GermStream::next(Germ& germ) {
  if (next_distance_ == kNeverDetected) return false;
  const int d = spec_->d();
  germ.index = next_index_++;
  germ.distance = next_distance_;
  const CounterRng lane(seed_, trial_, germ_lane(germ.index));
  lane.normals_at(0, scratch_);
  normalize(scratch_.data(), d);
  germ.position.assign(scratch_.begin(), scratch_.begin() + d);
  for (double& c : germ.position) c *= germ.distance;
  if (spec_->is_brownian()) {
    germ.velocity.clear();
  } else {
    double* dir = scratch_.data() + d;
    normalize(dir, d);
    const double speed = spec_->speed_law().sample(lane.uniform_at(0));
    germ.velocity.assign(dir, dir + d);
    for (double& c : germ.velocity) c *= speed;
  }
  advance();
  return true;
}

std::vector<Germ> sample_germs(const ModelSpec& spec, double window_radius, std::uint64_t seed,
                               std::uint32_t trial) {
  if (!(window_radius > 0.0) || !std::isfinite(window_radius)) {
    throw DomainError("window radius must be finite and > 0");
  }
  GermStream stream(spec, window_radius, seed, trial);
  std::vector<Germ> germs;
  Germ g{};
  while (stream.next(g)) germs.push_back(g);
  return germs;
}

}  // namespace mbm

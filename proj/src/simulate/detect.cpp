#include <cmath>
#include <vector>

#include "mbm/errors.hpp"
#include "mbm/simulate.hpp"

namespace mbm {

namespace {

constexpr int kMaxLevels = 30;
// A coarse bridge whose chance of reaching the tangent half-space of its start
// point is below exp(-40) is not refined.
constexpr double kSkipExponent = 40.0;

double dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

class BridgeWalker {
 public:
  // workspace must hold (grid.levels + 4) * x.size() doubles.
  BridgeWalker(std::span<const double> x, double R, const BrownianGrid& grid, const CounterRng& rng,
               double horizon, double* workspace)
      : x_(x),
        d_(static_cast<int>(x.size())),
        R_(R),
        grid_(grid),
        rng_(rng),
        horizon_(horizon),
        buf_(workspace) {}

  double run() {
    double* w0 = slot(0);
    double* w1 = slot(1);
    for (int i = 0; i < d_; ++i) w0[i] = 0.0;
    rng_.normals_at(1, {w1, static_cast<std::size_t>(d_)});
    const double s = std::sqrt(grid_.t_max);
    for (int i = 0; i < d_; ++i) w1[i] *= s;
    return visit(1, 0, 0.0, grid_.t_max, w0, w1);
  }

 private:
  // Slots 0 and 1 hold W(0) and W(t_max); slot level + 2 the midpoint of the
  // interval being refined at that level; the last two are scratch positions.
  double* slot(int k) { return buf_ + static_cast<std::ptrdiff_t>(k) * d_; }

  // Position x + w written to p; returns its norm.
  double place(const double* w, double* p) const {
    double s = 0.0;
    for (int i = 0; i < d_; ++i) {
      p[i] = x_[static_cast<std::size_t>(i)] + w[i];
      s += p[i] * p[i];
    }
    return std::sqrt(s);
  }

  double visit(std::uint32_t node, int level, double t0, double t1, const double* w0, const double* w1) {
    if (t0 >= horizon_) return kNeverDetected;
    double* p0 = slot(grid_.levels + 2);
    double* p1 = slot(grid_.levels + 3);
    const double r0 = place(w0, p0);
    const double r1 = place(w1, p1);
    const double h = t1 - t0;
    if (level == grid_.levels) {
      if (r1 <= R_) return t1;
      const double a = r0 - R_;
      const double b = r1 - R_;
      if (rng_.uniform_at(node + 1) < std::exp(-2.0 * a * b / h)) return t1;
      return kNeverDetected;
    }
    const double a = r0 - R_;
    const double b_plane = dot(p1, p0, d_) / r0 - R_;
    if (b_plane > 0.0 && 2.0 * a * b_plane / h > kSkipExponent) return kNeverDetected;
    double* wm = slot(level + 2);
    rng_.normals_at(node + 1, {wm, static_cast<std::size_t>(d_)});
    const double sd = std::sqrt(0.25 * h);
    for (int i = 0; i < d_; ++i) wm[i] = 0.5 * (w0[i] + w1[i]) + sd * wm[i];
    const double tm = 0.5 * (t0 + t1);
    const double left = visit(2 * node, level + 1, t0, tm, w0, wm);
    if (left != kNeverDetected) return left;
    return visit(2 * node + 1, level + 1, tm, t1, wm, w1);
  }

  std::span<const double> x_;
  int d_;
  double R_;
  const BrownianGrid& grid_;
  const CounterRng& rng_;
  double horizon_;
  double* buf_;
};

}  // namespace

double detect_inertial(std::span<const double> x, std::span<const double> v, double R) {
  if (x.size() != v.size()) throw DomainError("position and velocity dimensions differ");
  const int d = static_cast<int>(x.size());
  const double c = dot(x.data(), x.data(), d) - R * R;
  if (c <= 0.0) return 0.0;
  const double a = dot(v.data(), v.data(), d);
  const double b = dot(x.data(), v.data(), d);
  if (a == 0.0 || b >= 0.0) return kNeverDetected;
  const double disc = b * b - a * c;
  if (disc < 0.0) return kNeverDetected;
  // Smaller root (-b - sqrt(disc)) / a, written without cancellation.
  return c / (-b + std::sqrt(disc));
}

BrownianGrid BrownianGrid::from_step(double t_max, double dt) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be finite and > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be finite and > 0");
  int levels = 0;
  while (std::ldexp(t_max, -levels) > dt) {
    if (++levels > kMaxLevels) throw DomainError("dt is too small relative to t_max (more than 2^30 steps)");
  }
  return {t_max, levels};
}

double BrownianGrid::step() const noexcept { return std::ldexp(t_max, -levels); }

double detect_brownian(std::span<const double> x, double R, const BrownianGrid& grid,
                       const CounterRng& rng, double horizon) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  if (r2 <= R * R) return 0.0;
  thread_local std::vector<double> workspace;
  workspace.resize(static_cast<std::size_t>(grid.levels + 4) * x.size());
  return BridgeWalker(x, R, grid, rng, std::min(horizon, grid.t_max), workspace.data()).run();
}

}  // namespace mbm

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace mbm::detail {

// Double-exponential (tanh-sinh) quadrature on a finite interval. Abscissae are
// stored as complements 1 - x so nodes next to the endpoints keep full
// relative precision.
class TanhSinh {
 public:
  static constexpr int kMaxLevel = 9;

  static const TanhSinh& instance() {
    static const TanhSinh table;
    return table;
  }

  struct Result {
    double value;
    double error;
    int levels;
  };

  // f is evaluated at points of [a, b]; rel_tol applies to the difference of
  // successive levels, which tanh-sinh squares at each refinement.
  template <class F>
  Result integrate(F&& f, double a, double b, double rel_tol = 1e-10) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    auto eval_row = [&](const std::vector<Node>& row) {
      double s = 0.0;
      for (const Node& n : row) {
        const double d = half * n.complement;
        s += n.weight * (f(a + d) + f(b - d));
      }
      return s;
    };

    double h = kH0;
    double sum = kCenterWeight * f(mid) + eval_row(rows_[0]);
    double estimate = half * h * sum;
    double err = std::abs(estimate);
    int level = 1;
    for (; level <= kMaxLevel; ++level) {
      h *= 0.5;
      sum += eval_row(rows_[level]);
      const double next = half * h * sum;
      err = std::abs(next - estimate);
      estimate = next;
      if (level >= 3 && err <= rel_tol * std::abs(estimate)) break;
    }
    return {estimate, err, level};
  }

 private:
  struct Node {
    double complement;  // 1 - tanh(pi/2 sinh u)
    double weight;      // pi/2 cosh u / cosh^2(pi/2 sinh u)
  };

  static constexpr double kH0 = 0.5;
  static constexpr double kUMax = 3.2;
  static constexpr double kCenterWeight = std::numbers::pi / 2;

  TanhSinh() {
    rows_.resize(kMaxLevel + 1);
    for (int level = 0; level <= kMaxLevel; ++level) {
      const double h = kH0 / static_cast<double>(1 << level);
      // Level 0 holds every multiple of h0; later levels only the new odd ones.
      const int stride = level == 0 ? 1 : 2;
      for (int k = 1;; k += stride) {
        const double u = k * h;
        if (u > kUMax) break;
        const double q = std::numbers::pi / 2 * std::sinh(u);
        const double e = std::exp(-2.0 * q);
        const double complement = 2.0 * e / (1.0 + e);
        const double ch = 0.5 * (std::exp(q) + std::exp(-q));
        const double w = std::numbers::pi / 2 * std::cosh(u) / (ch * ch);
        if (w < 1e-300 || complement == 0.0) break;
        rows_[level].push_back({complement, w});
      }
    }
  }

  std::vector<std::vector<Node>> rows_;
};

}  // namespace mbm::detail

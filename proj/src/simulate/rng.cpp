#include "mbm/rng.hpp"

#include <cmath>
#include <numbers>

namespace mbm {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Sub-block reserved for the slot uniform; normals use sub-blocks from 0 up.
constexpr std::uint32_t kUniformSub = 0xFFFFFFFFu;
// Sequential draws live in slots at the top of the lane's address space.
constexpr std::uint32_t kSequentialSlot = 0xFFFFFFFFu;

std::uint64_t join(std::uint32_t hi, std::uint32_t lo) noexcept {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k) noexcept {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

double to_unit_open(std::uint64_t bits) noexcept {
  // 52 random bits plus half a step; with 53 bits the top value would round to 1.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint32_t trial, std::uint32_t lane) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      trial_(trial),
      lane_(lane) {}

PhiloxCounter CounterRng::block(std::uint32_t slot, std::uint32_t sub) const noexcept {
  return philox4x32({trial_, lane_, slot, sub}, key_);
}

double CounterRng::uniform() noexcept {
  // Each block yields two doubles; the sub-block index carries the position.
  const std::uint64_t pos = position_++;
  const PhiloxCounter r = block(kSequentialSlot - static_cast<std::uint32_t>(pos >> 33),
                                static_cast<std::uint32_t>(pos >> 1));
  return (pos & 1u) == 0 ? to_unit_open(join(r[0], r[1])) : to_unit_open(join(r[2], r[3]));
}

double CounterRng::exponential() noexcept { return -std::log(uniform()); }

void CounterRng::normals_at(std::uint32_t slot, std::span<double> out) const noexcept {
  // Box-Muller: one block gives two uniforms and hence two normals.
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const PhiloxCounter r = block(slot, static_cast<std::uint32_t>(i / 2));
    const double u1 = to_unit_open(join(r[0], r[1]));
    const double u2 = to_unit_open(join(r[2], r[3]));
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[i] = radius * std::cos(angle);
    if (i + 1 < out.size()) out[i + 1] = radius * std::sin(angle);
  }
}

double CounterRng::uniform_at(std::uint32_t slot) const noexcept {
  const PhiloxCounter r = block(slot, kUniformSub);
  return to_unit_open(join(r[0], r[1]));
}

}  // namespace mbm

#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace mbm {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Maps 64 random bits to a double in the open interval (0, 1).
double to_unit_open(std::uint64_t bits) noexcept;

/// Random numbers addressed by (trial, lane, slot). A lane is an independent
/// substream inside one trial; a slot selects a block of draws inside a lane.
/// Every draw is a pure function of the seed and its address, so results do
/// not depend on evaluation order or thread assignment.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t trial, std::uint32_t lane) noexcept;

  /// Sequential uniform draws in (0, 1), advancing an internal position.
  double uniform() noexcept;
  /// Sequential standard exponential draw.
  double exponential() noexcept;

  /// Fills out with independent standard normals addressed by slot.
  void normals_at(std::uint32_t slot, std::span<double> out) const noexcept;
  /// Uniform in (0, 1) addressed by slot, independent of normals_at(slot).
  double uniform_at(std::uint32_t slot) const noexcept;

 private:
  PhiloxCounter block(std::uint32_t slot, std::uint32_t sub) const noexcept;

  PhiloxKey key_;
  std::uint32_t trial_;
  std::uint32_t lane_;
  std::uint64_t position_ = 0;
};

}  // namespace mbm

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "volsal/grid.hpp"

namespace volsal::synth {

// SplitMix64 (Steele, Lea & Flood). State advances by 0x9E3779B97F4A7C15 and
// the output is mixed with multipliers 0xBF58476D1CE4E5B9 and
// 0x94D049BB133111EB, shifts 30/27/31. Portable and fully specified, so
// synthetic volumes are reproducible bit-for-bit in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

enum class SyntheticKind { fault_plane, blob, textured_facies, constant, impulse };

std::string_view to_string(SyntheticKind kind) noexcept;
// Accepts the canonical names plus the short forms "fault" and "facies".
SyntheticKind parse_kind(std::string_view name);

// Two-component sinusoidal texture; wavevectors in cycles per sample along
// (t, x, y). The defaults vary laterally only, so a homogeneous region has a
// nearly position-independent local spectrum for small cubes.
struct Texture {
  std::array<double, 3> k1{0.0, 0.25, 0.0};
  std::array<double, 3> k2{0.0, 0.0, 0.3};
};

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::fault_plane;
  Dims3 dims{64, 64, 64};
  std::uint64_t seed = 0;

  // Peak absolute sample value; also the constant/impulse value.
  double amplitude = 1.0;
  // Fraction of the amplitude given to uniform noise, in [0, 1].
  double noise = 0.1;

  // Region "a" is the side n.p < offset (fault), outside the blob, or above
  // the facies interface; region "b" is the other side.
  Texture texture_a;
  // Facies and blob use a different frequency in region b. The fault keeps
  // texture_a on both sides with every phase shifted by pi; the shift ramps
  // linearly across a one-voxel zone centered on the plane.
  Texture texture_b{{0.0, 0.4, 0.0}, {0.0, 0.0, 0.15}};

  // fault-plane: points with normal . (t,x,y) == offset; offset defaults to
  // the plane through (T/2, X/2, Y/2).
  std::array<double, 3> normal{1.0, 0.0, 0.0};
  std::optional<double> offset;

  // blob: sphere center (default (T/2, X/2, Y/2)) and radius (default
  // min extent / 4).
  std::optional<std::array<double, 3>> center;
  std::optional<double> radius;

  // textured-facies: interface t = offset_t + relief * sin(2 pi x / X) *
  // cos(2 pi y / Y); offset_t defaults to T / 2.
  double relief = 3.0;

  // impulse position, default (T/2, X/2, Y/2).
  std::optional<std::array<std::size_t, 3>> position;
};

struct SyntheticVolume {
  Volume3 volume;
  // 1 where a voxel lies within one voxel of the salient structure.
  Grid3<std::uint8_t> mask;
};

// Deterministic in (spec, seed). Throws BadSpec for degenerate input.
SyntheticVolume generate(const SyntheticSpec& spec);

// Distance in voxels from (t,x,y) to the fault plane of `spec`.
double distance_to_plane(const SyntheticSpec& spec, double t, double x, double y);

}  // namespace volsal::synth

#include "volsal/synthkit.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "volsal/error.hpp"

namespace volsal::synth {
namespace {

std::size_t mask_count(const Grid3<std::uint8_t>& m) {
  std::size_t n = 0;
  for (auto v : m.values()) n += v;
  return n;
}

TEST(SplitMix64, ReferenceSequenceForSeedZero) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, UniformInUnitInterval) {
  SplitMix64 rng(123);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Generate, Constant) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::constant;
  spec.dims = {16, 16, 16};
  spec.amplitude = 2.5;
  const auto g = generate(spec);
  for (float v : g.volume.values()) EXPECT_EQ(v, 2.5f);
  EXPECT_EQ(mask_count(g.mask), 0u);
}

TEST(Generate, Impulse) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::impulse;
  spec.dims = {16, 16, 16};
  spec.position = std::array<std::size_t, 3>{8, 8, 8};
  const auto g = generate(spec);
  EXPECT_EQ(g.volume(8, 8, 8), 1.0f);
  EXPECT_EQ(mask_count(g.mask), 1u);
  EXPECT_EQ(g.mask(8, 8, 8), 1);
  double sum = 0;
  for (float v : g.volume.values()) sum += std::abs(v);
  EXPECT_EQ(sum, 1.0);
}

TEST(Generate, FaultPlaneMask) {
  SyntheticSpec spec;
  spec.dims = {64, 64, 64};
  spec.seed = 7;
  spec.offset = 32.0;
  const auto g = generate(spec);
  EXPECT_EQ(mask_count(g.mask), 3u * 64 * 64);
  for (std::size_t t = 0; t < 64; ++t) {
    const bool in = t >= 31 && t <= 33;
    EXPECT_EQ(g.mask(t, 10, 20), in ? 1 : 0) << t;
  }
}

TEST(Generate, FaultDefaultOffsetIsMidVolume) {
  SyntheticSpec spec;
  EXPECT_DOUBLE_EQ(distance_to_plane(spec, 32, 5, 9), 0.0);
  spec.normal = {0.0, 2.0, 0.0};
  EXPECT_DOUBLE_EQ(distance_to_plane(spec, 0, 35, 0), 3.0);
}

TEST(Generate, PhaseFlipsAcrossFault) {
  SyntheticSpec spec;
  spec.dims = {32, 16, 16};
  spec.noise = 0.0;
  spec.offset = 16.0;
  const auto g = generate(spec);
  // Same lateral position, opposite sides: texture values are negated.
  EXPECT_NEAR(g.volume(3, 5, 7), -g.volume(28, 5, 7), 1e-6);
}

TEST(Generate, DeterministicPerSeed) {
  for (auto kind : {SyntheticKind::fault_plane, SyntheticKind::blob, SyntheticKind::textured_facies}) {
    SyntheticSpec spec;
    spec.kind = kind;
    spec.dims = {24, 20, 16};
    spec.seed = 99;
    const auto a = generate(spec), b = generate(spec);
    EXPECT_EQ(a.volume, b.volume);
    EXPECT_EQ(a.mask, b.mask);
    spec.seed = 100;
    EXPECT_NE(generate(spec).volume, a.volume);
  }
}

TEST(Generate, BoundedAndFinite) {
  for (auto kind : {SyntheticKind::fault_plane, SyntheticKind::blob, SyntheticKind::textured_facies}) {
    for (double noise : {0.0, 0.1, 1.0}) {
      SyntheticSpec spec;
      spec.kind = kind;
      spec.dims = {20, 20, 20};
      spec.amplitude = 3.0;
      spec.noise = noise;
      spec.seed = 4;
      const auto g = generate(spec);
      for (float v : g.volume.values()) {
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_LE(std::abs(v), 3.0f);
      }
    }
  }
}

TEST(Generate, BlobMaskIsShell) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::blob;
  spec.dims = {32, 32, 32};
  spec.radius = 8.0;
  const auto g = generate(spec);
  EXPECT_EQ(g.mask(16, 16, 16), 0);       // center
  EXPECT_EQ(g.mask(24, 16, 16), 1);       // on the sphere
  EXPECT_EQ(g.mask(16 + 10, 16, 16), 0);  // outside the shell
  EXPECT_GT(mask_count(g.mask), 0u);
}

TEST(Generate, FaciesMaskFollowsInterface) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::textured_facies;
  spec.dims = {32, 16, 16};
  spec.relief = 0.0;
  const auto g = generate(spec);
  EXPECT_EQ(mask_count(g.mask), 3u * 16 * 16);
  EXPECT_EQ(g.mask(16, 3, 3), 1);
}

TEST(Generate, BadSpecs) {
  auto code = [](SyntheticSpec spec) {
    try {
      generate(spec);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadConfig;
  };
  SyntheticSpec plane;
  plane.normal = {0.0, 0.0, 0.0};
  EXPECT_EQ(code(plane), ErrorCode::BadSpec);

  SyntheticSpec blob;
  blob.kind = SyntheticKind::blob;
  blob.center = std::array<double, 3>{-5.0, 10.0, 10.0};
  EXPECT_EQ(code(blob), ErrorCode::BadSpec);
  blob.center.reset();
  blob.radius = 0.0;
  EXPECT_EQ(code(blob), ErrorCode::BadSpec);

  SyntheticSpec impulse;
  impulse.kind = SyntheticKind::impulse;
  impulse.position = std::array<std::size_t, 3>{64, 0, 0};
  EXPECT_EQ(code(impulse), ErrorCode::BadSpec);

  SyntheticSpec empty;
  empty.dims = {0, 4, 4};
  EXPECT_EQ(code(empty), ErrorCode::BadSpec);
}

TEST(ParseKind, Aliases) {
  EXPECT_EQ(parse_kind("fault"), SyntheticKind::fault_plane);
  EXPECT_EQ(parse_kind("facies"), SyntheticKind::textured_facies);
  EXPECT_EQ(parse_kind(to_string(SyntheticKind::blob)), SyntheticKind::blob);
  EXPECT_THROW(parse_kind("salt"), Error);
}

}  // namespace
}  // namespace volsal::synth

#include "volsal/synthkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "volsal/error.hpp"

namespace volsal::synth {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dot(const std::array<double, 3>& a, double t, double x, double y) {
  return a[0] * t + a[1] * x + a[2] * y;
}

double norm(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

// Random phases drawn once per volume, then per-voxel noise in storage order.
struct TextureSampler {
  double amplitude;
  double noise;
  double phase1;
  double phase2;
  SplitMix64 rng;

  TextureSampler(const SyntheticSpec& spec)
      : amplitude(spec.amplitude), noise(spec.noise), phase1(0), phase2(0), rng(spec.seed) {
    phase1 = kTwoPi * rng.uniform();
    phase2 = kTwoPi * rng.uniform();
  }

  // |value| <= amplitude by construction.
  float sample(const Texture& tex, double shift, double t, double x, double y) {
    const double waves = 0.5 * (std::sin(kTwoPi * dot(tex.k1, t, x, y) + phase1 + shift) +
                                std::sin(kTwoPi * dot(tex.k2, t, x, y) + phase2 + shift));
    const double u = 2.0 * rng.uniform() - 1.0;
    return static_cast<float>(amplitude * ((1.0 - noise) * waves + noise * u));
  }
};

void validate(const SyntheticSpec& spec) {
  if (spec.dims.count() == 0) throw Error(ErrorCode::BadSpec, "volume dims must be positive");
  if (!std::isfinite(spec.amplitude) || spec.amplitude < 0.0) {
    throw Error(ErrorCode::BadSpec, "amplitude must be finite and non-negative");
  }
  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) {
    throw Error(ErrorCode::BadSpec, "noise fraction must lie in [0, 1]");
  }
}

// Integer midpoint (T/2, X/2, Y/2), e.g. 32 for an extent of 64.
std::array<double, 3> volume_center(Dims3 d) {
  return {static_cast<double>(d.t / 2), static_cast<double>(d.x / 2),
          static_cast<double>(d.y / 2)};
}

template <typename Fn>
void for_each_voxel(Dims3 d, Fn&& fn) {
  for (std::size_t y = 0; y < d.y; ++y)
    for (std::size_t x = 0; x < d.x; ++x)
      for (std::size_t t = 0; t < d.t; ++t) fn(t, x, y);
}

SyntheticVolume fault_plane(const SyntheticSpec& spec) {
  const double n = norm(spec.normal);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::BadSpec, "fault-plane normal must be nonzero and finite");
  }
  SyntheticVolume out{Volume3(spec.dims), Grid3<std::uint8_t>(spec.dims, 0)};
  TextureSampler sampler(spec);
  for_each_voxel(spec.dims, [&](std::size_t t, std::size_t x, std::size_t y) {
    const double dt = static_cast<double>(t), dx = static_cast<double>(x),
                 dy = static_cast<double>(y);
    const double signed_dist = distance_to_plane(spec, dt, dx, dy);
    // Phase ramps from 0 to pi across a one-voxel fault zone centered on the plane.
    const double shift = std::numbers::pi * std::clamp(signed_dist + 0.5, 0.0, 1.0);
    out.volume(t, x, y) = sampler.sample(spec.texture_a, shift, dt, dx, dy);
    out.mask(t, x, y) = std::abs(signed_dist) <= 1.0 ? 1 : 0;
  });
  return out;
}

SyntheticVolume blob(const SyntheticSpec& spec) {
  const auto c = spec.center.value_or(volume_center(spec.dims));
  const double min_extent =
      static_cast<double>(std::min({spec.dims.t, spec.dims.x, spec.dims.y}));
  const double r = spec.radius.value_or(min_extent / 4.0);
  if (!(r > 0.0)) throw Error(ErrorCode::BadSpec, "blob radius must be positive");
  if (!(c[0] >= 0.0 && c[0] <= spec.dims.t - 1.0 && c[1] >= 0.0 && c[1] <= spec.dims.x - 1.0 &&
        c[2] >= 0.0 && c[2] <= spec.dims.y - 1.0)) {
    throw Error(ErrorCode::BadSpec, "blob center lies outside the volume");
  }
  SyntheticVolume out{Volume3(spec.dims), Grid3<std::uint8_t>(spec.dims, 0)};
  TextureSampler sampler(spec);
  for_each_voxel(spec.dims, [&](std::size_t t, std::size_t x, std::size_t y) {
    const double dt = static_cast<double>(t), dx = static_cast<double>(x),
                 dy = static_cast<double>(y);
    const double d = std::sqrt((dt - c[0]) * (dt - c[0]) + (dx - c[1]) * (dx - c[1]) +
                               (dy - c[2]) * (dy - c[2]));
    const Texture& tex = d < r ? spec.texture_b : spec.texture_a;
    out.volume(t, x, y) = sampler.sample(tex, 0.0, dt, dx, dy);
    out.mask(t, x, y) = std::abs(d - r) <= 1.0 ? 1 : 0;
  });
  return out;
}

SyntheticVolume textured_facies(const SyntheticSpec& spec) {
  if (!std::isfinite(spec.relief)) throw Error(ErrorCode::BadSpec, "relief must be finite");
  const double base = spec.offset.value_or(volume_center(spec.dims)[0]);
  SyntheticVolume out{Volume3(spec.dims), Grid3<std::uint8_t>(spec.dims, 0)};
  TextureSampler sampler(spec);
  const double nx = static_cast<double>(spec.dims.x);
  const double ny = static_cast<double>(spec.dims.y);
  for_each_voxel(spec.dims, [&](std::size_t t, std::size_t x, std::size_t y) {
    const double dt = static_cast<double>(t), dx = static_cast<double>(x),
                 dy = static_cast<double>(y);
    const double surface =
        base + spec.relief * std::sin(kTwoPi * dx / nx) * std::cos(kTwoPi * dy / ny);
    const Texture& tex = dt < surface ? spec.texture_a : spec.texture_b;
    out.volume(t, x, y) = sampler.sample(tex, 0.0, dt, dx, dy);
    out.mask(t, x, y) = std::abs(dt - surface) <= 1.0 ? 1 : 0;
  });
  return out;
}

}  // namespace

std::string_view to_string(SyntheticKind kind) noexcept {
  switch (kind) {
    case SyntheticKind::fault_plane: return "fault-plane";
    case SyntheticKind::blob: return "blob";
    case SyntheticKind::textured_facies: return "textured-facies";
    case SyntheticKind::constant: return "constant";
    case SyntheticKind::impulse: return "impulse";
  }
  return "unknown";
}

SyntheticKind parse_kind(std::string_view name) {
  if (name == "fault-plane" || name == "fault") return SyntheticKind::fault_plane;
  if (name == "blob") return SyntheticKind::blob;
  if (name == "textured-facies" || name == "facies") return SyntheticKind::textured_facies;
  if (name == "constant") return SyntheticKind::constant;
  if (name == "impulse") return SyntheticKind::impulse;
  throw Error(ErrorCode::BadSpec, "unknown synthetic kind '" + std::string(name) + "'");
}

double distance_to_plane(const SyntheticSpec& spec, double t, double x, double y) {
  const double n = norm(spec.normal);
  const auto c = volume_center(spec.dims);
  const double offset = spec.offset.value_or(dot(spec.normal, c[0], c[1], c[2]));
  return (dot(spec.normal, t, x, y) - offset) / n;
}

SyntheticVolume generate(const SyntheticSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case SyntheticKind::fault_plane:
      return fault_plane(spec);
    case SyntheticKind::blob:
      return blob(spec);
    case SyntheticKind::textured_facies:
      return textured_facies(spec);
    case SyntheticKind::constant:
      return {Volume3(spec.dims, static_cast<float>(spec.amplitude)),
              Grid3<std::uint8_t>(spec.dims, 0)};
    case SyntheticKind::impulse: {
      const auto pos = spec.position.value_or(
          std::array<std::size_t, 3>{spec.dims.t / 2, spec.dims.x / 2, spec.dims.y / 2});
      if (pos[0] >= spec.dims.t || pos[1] >= spec.dims.x || pos[2] >= spec.dims.y) {
        throw Error(ErrorCode::BadSpec, "impulse position lies outside the volume");
      }
      SyntheticVolume out{Volume3(spec.dims, 0.0f), Grid3<std::uint8_t>(spec.dims, 0)};
      out.volume(pos[0], pos[1], pos[2]) = static_cast<float>(spec.amplitude);
      out.mask(pos[0], pos[1], pos[2]) = 1;
      return out;
    }
  }
  throw Error(ErrorCode::BadSpec, "unhandled synthetic kind");
}

}  // namespace volsal::synth

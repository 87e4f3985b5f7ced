#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "volsal/grid.hpp"

namespace volsal::io {

// VOLSAL01 on-disk layout, all little-endian:
//   bytes  0..7   magic "VOLSAL01"
//   bytes  8..19  T, X, Y as uint32
//   byte   20     dtype code (0x01 = float32)
//   bytes 21..23  reserved, zero
//   payload       T*X*Y float32 samples, t fastest
inline constexpr std::array<char, 8> kMagic = {'V', 'O', 'L', 'S', 'A', 'L', '0', '1'};
inline constexpr std::size_t kHeaderSize = 24;
inline constexpr std::uint8_t kDtypeFloat32 = 0x01;

struct VolumeHeader {
  Dims3 dims;
  std::uint8_t dtype = kDtypeFloat32;
};

std::array<std::uint8_t, kHeaderSize> encode_header(const VolumeHeader& header);
VolumeHeader decode_header(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_volume(const Volume3& volume);
Volume3 decode_volume(std::span<const std::uint8_t> bytes);

Volume3 load_volume(const std::filesystem::path& path);
Volume3 load_volume(std::istream& in);

void store_volume(const Volume3& volume, const std::filesystem::path& path);
void store_volume(const Volume3& volume, std::ostream& out);

enum class Colormap { gray, heat };

Axis parse_axis(std::string_view name);
Colormap parse_colormap(std::string_view name);

// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;

  std::array<std::uint8_t, 3> pixel(std::size_t row, std::size_t col) const {
    const std::size_t o = 3 * (row * width + col);
    return {rgb[o], rgb[o + 1], rgb[o + 2]};
  }
};

// Maps a normalized value in [0,1] to RGB.
std::array<std::uint8_t, 3> apply_colormap(double v, Colormap map);

// Extracts the 2-D section at `index` along `axis`, min-max normalizes it and
// maps it through `map`. Constant sections render at the colormap midpoint.
//
// Section orientation: rows run along t for the x and y axes (time down the
// page) and along y for the t axis. Columns run along x for the t and y axes
// and along y for the x axis.
Image render_slice(const Volume3& volume, Axis axis, std::size_t index, Colormap map);

void write_png(const Image& image, const std::filesystem::path& path);

}  // namespace volsal::io

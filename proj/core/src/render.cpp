#include "volsal/volume_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "volsal/error.hpp"

namespace volsal::io {
namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
}

}  // namespace

Axis parse_axis(std::string_view name) {
  if (name == "t") return Axis::t;
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  throw Error(ErrorCode::BadConfig, "unknown axis '" + std::string(name) + "'");
}

Colormap parse_colormap(std::string_view name) {
  if (name == "gray") return Colormap::gray;
  if (name == "heat") return Colormap::heat;
  throw Error(ErrorCode::BadConfig, "unknown colormap '" + std::string(name) + "'");
}

std::array<std::uint8_t, 3> apply_colormap(double v, Colormap map) {
  switch (map) {
    case Colormap::gray: {
      const auto g = to_byte(v);
      return {g, g, g};
    }
    case Colormap::heat:
      // black -> red -> yellow -> white
      return {to_byte(3.0 * v), to_byte(3.0 * v - 1.0), to_byte(3.0 * v - 2.0)};
  }
  return {0, 0, 0};
}

Image render_slice(const Volume3& volume, Axis axis, std::size_t index, Colormap map) {
  const Dims3 d = volume.dims();
  if (index >= d[axis]) {
    throw Error(ErrorCode::IndexOutOfRange, "slice index " + std::to_string(index) +
                                                " outside extent " + std::to_string(d[axis]));
  }

  Image img;
  auto sample = [&](std::size_t row, std::size_t col) -> float {
    switch (axis) {
      case Axis::t: return volume(index, col, row);
      case Axis::x: return volume(row, index, col);
      case Axis::y: return volume(row, col, index);
    }
    return 0.0f;
  };
  switch (axis) {
    case Axis::t: img.width = d.x; img.height = d.y; break;
    case Axis::x: img.width = d.y; img.height = d.t; break;
    case Axis::y: img.width = d.x; img.height = d.t; break;
  }

  double lo = sample(0, 0);
  double hi = lo;
  for (std::size_t r = 0; r < img.height; ++r) {
    for (std::size_t c = 0; c < img.width; ++c) {
      lo = std::min<double>(lo, sample(r, c));
      hi = std::max<double>(hi, sample(r, c));
    }
  }
  const double range = hi - lo;

  img.rgb.resize(3 * img.width * img.height);
  for (std::size_t r = 0; r < img.height; ++r) {
    for (std::size_t c = 0; c < img.width; ++c) {
      const double v = range > 0.0 ? (sample(r, c) - lo) / range : 0.5;
      const auto px = apply_colormap(v, map);
      std::copy(px.begin(), px.end(), img.rgb.begin() + 3 * (r * img.width + c));
    }
  }
  return img;
}

void write_png(const Image& image, const std::filesystem::path& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw Error(ErrorCode::IoFailure, "cannot create " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(ErrorCode::IoFailure, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::IoFailure, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::IoFailure, "libpng failed writing " + path.string());
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t r = 0; r < image.height; ++r) {
    png_write_row(png, image.rgb.data() + 3 * image.width * r);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace volsal::io

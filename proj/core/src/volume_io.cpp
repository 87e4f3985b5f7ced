#include "volsal/volume_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "volsal/error.hpp"

namespace volsal::io {
namespace {

void put_u32(std::uint8_t* out, std::uint32_t v) {
  out[0] = static_cast<std::uint8_t>(v);
  out[1] = static_cast<std::uint8_t>(v >> 8);
  out[2] = static_cast<std::uint8_t>(v >> 16);
  out[3] = static_cast<std::uint8_t>(v >> 24);
}

std::uint32_t get_u32(const std::uint8_t* in) {
  return static_cast<std::uint32_t>(in[0]) | (static_cast<std::uint32_t>(in[1]) << 8) |
         (static_cast<std::uint32_t>(in[2]) << 16) | (static_cast<std::uint32_t>(in[3]) << 24);
}

std::uint32_t checked_extent(std::size_t n) {
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::DimMismatch, "extent " + std::to_string(n) + " not representable");
  }
  return static_cast<std::uint32_t>(n);
}

}  // namespace

std::array<std::uint8_t, kHeaderSize> encode_header(const VolumeHeader& header) {
  std::array<std::uint8_t, kHeaderSize> out{};
  std::copy(kMagic.begin(), kMagic.end(), out.begin());
  put_u32(out.data() + 8, checked_extent(header.dims.t));
  put_u32(out.data() + 12, checked_extent(header.dims.x));
  put_u32(out.data() + 16, checked_extent(header.dims.y));
  out[20] = header.dtype;
  return out;
}

VolumeHeader decode_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize ||
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin(),
                  [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; })) {
    throw Error(ErrorCode::BadMagic, "missing VOLSAL01 header");
  }
  VolumeHeader h;
  h.dims = {get_u32(bytes.data() + 8), get_u32(bytes.data() + 12), get_u32(bytes.data() + 16)};
  h.dtype = bytes[20];
  if (h.dtype != kDtypeFloat32) {
    throw Error(ErrorCode::BadMagic, "unsupported dtype code " + std::to_string(h.dtype));
  }
  if (h.dims.count() == 0) {
    throw Error(ErrorCode::DimMismatch, "header declares an empty volume");
  }
  return h;
}

std::vector<std::uint8_t> encode_volume(const Volume3& volume) {
  if (volume.size() != volume.dims().count()) {
    throw Error(ErrorCode::DimMismatch, "sample count disagrees with dims");
  }
  std::vector<std::uint8_t> out(kHeaderSize + 4 * volume.size());
  const auto header = encode_header({volume.dims(), kDtypeFloat32});
  std::copy(header.begin(), header.end(), out.begin());
  std::uint8_t* p = out.data() + kHeaderSize;
  for (float v : volume.values()) {
    put_u32(p, std::bit_cast<std::uint32_t>(v));
    p += 4;
  }
  return out;
}

Volume3 decode_volume(std::span<const std::uint8_t> bytes) {
  const VolumeHeader h = decode_header(bytes);
  const std::size_t n = h.dims.count();
  const std::size_t payload = bytes.size() - kHeaderSize;
  if (payload != 4 * n) {
    std::ostringstream msg;
    msg << "header declares " << n << " samples, payload holds " << payload << " bytes";
    throw Error(ErrorCode::DimMismatch, msg.str());
  }
  std::vector<float> data(n);
  const std::uint8_t* p = bytes.data() + kHeaderSize;
  for (std::size_t i = 0; i < n; ++i, p += 4) {
    data[i] = std::bit_cast<float>(get_u32(p));
    if (!std::isfinite(data[i])) {
      throw Error(ErrorCode::NonFiniteSample, "sample " + std::to_string(i) + " is not finite");
    }
  }
  return Volume3(h.dims, std::move(data));
}

Volume3 load_volume(std::istream& in) {
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read failed");
  return decode_volume(bytes);
}

Volume3 load_volume(const std::filesystem::path& path) {
  if (path.empty()) throw Error(ErrorCode::IoFailure, "empty path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return load_volume(in);
}

void store_volume(const Volume3& volume, std::ostream& out) {
  const auto bytes = encode_volume(volume);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed");
}

void store_volume(const Volume3& volume, const std::filesystem::path& path) {
  if (path.empty()) throw Error(ErrorCode::IoFailure, "empty path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
  store_volume(volume, out);
}

}  // namespace volsal::io

#include "volsal/volume_io.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "volsal/error.hpp"

namespace volsal::io {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("volsal_io_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> handmade_file(std::uint32_t t, std::uint32_t x, std::uint32_t y,
                                        const std::vector<float>& samples) {
  std::vector<std::uint8_t> b = {'V', 'O', 'L', 'S', 'A', 'L', '0', '1'};
  for (std::uint32_t d : {t, x, y})
    for (int s = 0; s < 32; s += 8) b.push_back(static_cast<std::uint8_t>(d >> s));
  b.insert(b.end(), {0x01, 0, 0, 0});
  for (float f : samples) {
    const auto u = std::bit_cast<std::uint32_t>(f);
    for (int s = 0; s < 32; s += 8) b.push_back(static_cast<std::uint8_t>(u >> s));
  }
  return b;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no volsal::Error thrown";
  return ErrorCode::BadConfig;
}

TEST(LoadVolume, HandmadeFile) {
  TempDir dir;
  write_bytes(dir / "v.vol", handmade_file(2, 2, 2, {0, 1, 2, 3, 4, 5, 6, 7}));
  const auto v = load_volume(dir / "v.vol");
  EXPECT_EQ(v.dims(), (Dims3{2, 2, 2}));
  EXPECT_EQ(v.storage().front(), 0.0f);
  EXPECT_EQ(v.storage().back(), 7.0f);
  EXPECT_EQ(v(1, 0, 0), 1.0f);  // t fastest
  EXPECT_EQ(v(0, 1, 0), 2.0f);
  EXPECT_EQ(v(0, 0, 1), 4.0f);
}

TEST(LoadVolume, Errors) {
  TempDir dir;
  write_bytes(dir / "short.vol", handmade_file(2, 2, 2, {0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(code_of([&] { load_volume(dir / "short.vol"); }), ErrorCode::DimMismatch);

  auto bad = handmade_file(1, 1, 1, {1.0f});
  bad[0] = 'X';
  write_bytes(dir / "magic.vol", bad);
  EXPECT_EQ(code_of([&] { load_volume(dir / "magic.vol"); }), ErrorCode::BadMagic);

  auto dtype = handmade_file(1, 1, 1, {1.0f});
  dtype[20] = 0x02;
  write_bytes(dir / "dtype.vol", dtype);
  EXPECT_EQ(code_of([&] { load_volume(dir / "dtype.vol"); }), ErrorCode::BadMagic);

  write_bytes(dir / "nan.vol", handmade_file(1, 1, 2, {1.0f, std::numeric_limits<float>::quiet_NaN()}));
  EXPECT_EQ(code_of([&] { load_volume(dir / "nan.vol"); }), ErrorCode::NonFiniteSample);
  write_bytes(dir / "inf.vol", handmade_file(1, 1, 1, {std::numeric_limits<float>::infinity()}));
  EXPECT_EQ(code_of([&] { load_volume(dir / "inf.vol"); }), ErrorCode::NonFiniteSample);

  write_bytes(dir / "tiny.vol", {'V', 'O', 'L'});
  EXPECT_EQ(code_of([&] { load_volume(dir / "tiny.vol"); }), ErrorCode::BadMagic);

  EXPECT_EQ(code_of([&] { load_volume(dir / "missing.vol"); }), ErrorCode::IoFailure);
  EXPECT_EQ(code_of([&] { load_volume(fs::path{}); }), ErrorCode::IoFailure);
}

TEST(StoreVolume, SingleSampleLayout) {
  TempDir dir;
  store_volume(Volume3({1, 1, 1}, 3.5f), dir / "one.vol");
  const auto bytes = read_bytes(dir / "one.vol");
  ASSERT_EQ(bytes.size(), 28u);
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 8),
            (std::vector<std::uint8_t>{'V', 'O', 'L', 'S', 'A', 'L', '0', '1'}));
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(bytes[20], 0x01);
  EXPECT_EQ(bytes[21] | bytes[22] | bytes[23], 0);
  // 3.5f = 0x40600000
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 24, bytes.end()),
            (std::vector<std::uint8_t>{0x00, 0x00, 0x60, 0x40}));
}

TEST(StoreVolume, ZeroVolumePayload) {
  const auto bytes = encode_volume(Volume3({4, 4, 4}, 0.0f));
  ASSERT_EQ(bytes.size(), 24u + 256u);
  for (std::size_t i = 24; i < bytes.size(); ++i) EXPECT_EQ(bytes[i], 0);
}

TEST(StoreVolume, UnwritableDestination) {
  EXPECT_EQ(code_of([] { store_volume(Volume3({1, 1, 1}), fs::path("/nonexistent/dir/v.vol")); }),
            ErrorCode::IoFailure);
}

TEST(RoundTrip, RandomVolumesAreBitExact) {
  TempDir dir;
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const Dims3 d{1 + rng() % 9, 1 + rng() % 9, 1 + rng() % 9};
    // Arbitrary finite bit patterns, including denormals and signed zeros.
    Volume3 v(d);
    for (auto& s : v.storage()) {
      do {
        s = std::bit_cast<float>(static_cast<std::uint32_t>(rng()));
      } while (!std::isfinite(s));
    }
    const auto path = dir / ("rt" + std::to_string(trial) + ".vol");
    store_volume(v, path);
    const auto loaded = load_volume(path);
    const auto a = encode_volume(v), b = encode_volume(loaded);
    EXPECT_EQ(a, b);
    EXPECT_EQ(read_bytes(path), a);

    // store(load(f)) is byte-identical to f.
    const auto again = dir / ("rt" + std::to_string(trial) + "b.vol");
    store_volume(load_volume(path), again);
    EXPECT_EQ(read_bytes(again), read_bytes(path));
  }
}

TEST(RoundTrip, Streams) {
  const auto v = testing::random_volume({3, 4, 5}, 8);
  std::stringstream ss;
  store_volume(v, ss);
  EXPECT_EQ(load_volume(ss), v);
}

// --- rendering -------------------------------------------------------------

TEST(RenderSlice, ConstantSliceIsMidpoint) {
  const Volume3 v({4, 3, 2}, 9.0f);
  const auto gray = render_slice(v, Axis::y, 0, Colormap::gray);
  EXPECT_EQ(gray.width, 3u);
  EXPECT_EQ(gray.height, 4u);
  for (auto b : gray.rgb) EXPECT_EQ(b, 128);
  const auto heat = render_slice(v, Axis::y, 1, Colormap::heat);
  const auto mid = apply_colormap(0.5, Colormap::heat);
  for (std::size_t r = 0; r < heat.height; ++r)
    for (std::size_t c = 0; c < heat.width; ++c) EXPECT_EQ(heat.pixel(r, c), mid);
}

TEST(RenderSlice, BinarySlice) {
  Volume3 v({2, 2, 1});
  v(0, 0, 0) = 0.0f;
  v(1, 0, 0) = 1.0f;
  v(0, 1, 0) = 1.0f;
  v(1, 1, 0) = 0.0f;
  const auto img = render_slice(v, Axis::y, 0, Colormap::gray);
  EXPECT_EQ(img.pixel(0, 0)[0], 0);
  EXPECT_EQ(img.pixel(1, 0)[0], 255);
  EXPECT_EQ(img.pixel(0, 1)[0], 255);
  EXPECT_EQ(img.pixel(1, 1)[0], 0);
}

TEST(RenderSlice, FourLevelsGray) {
  Volume3 v({2, 2, 1});
  v(0, 0, 0) = 0.0f;
  v(1, 0, 0) = 1.0f;
  v(0, 1, 0) = 2.0f;
  v(1, 1, 0) = 3.0f;
  const auto img = render_slice(v, Axis::y, 0, Colormap::gray);
  EXPECT_EQ(img.pixel(0, 0)[0], 0);
  EXPECT_EQ(img.pixel(1, 0)[0], 85);
  EXPECT_EQ(img.pixel(0, 1)[0], 170);
  EXPECT_EQ(img.pixel(1, 1)[0], 255);
}

TEST(RenderSlice, DimensionsFollowAxis) {
  const auto v = testing::random_volume({6, 5, 4}, 1);
  const auto t = render_slice(v, Axis::t, 2, Colormap::gray);
  EXPECT_EQ(t.width, 5u);
  EXPECT_EQ(t.height, 4u);
  const auto x = render_slice(v, Axis::x, 4, Colormap::gray);
  EXPECT_EQ(x.width, 4u);
  EXPECT_EQ(x.height, 6u);
  EXPECT_EQ(x.rgb.size(), 3u * 4 * 6);
}

TEST(RenderSlice, DependsOnlyOnSliceMinMax) {
  auto v = testing::random_volume({6, 5, 4}, 2);
  const auto before = render_slice(v, Axis::y, 1, Colormap::heat);
  // Affine rescale of the slice plus changes elsewhere leave the image alone.
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t t = 0; t < 6; ++t) v(t, x, 1) = 4.0f * v(t, x, 1) + 8.0f;
  v(0, 0, 3) = 1e6f;
  EXPECT_EQ(render_slice(v, Axis::y, 1, Colormap::heat).rgb, before.rgb);
}

TEST(RenderSlice, IndexOutOfRange) {
  const Volume3 v({4, 3, 2});
  EXPECT_EQ(code_of([&] { render_slice(v, Axis::y, 2, Colormap::gray); }),
            ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { render_slice(v, Axis::t, 4, Colormap::gray); }),
            ErrorCode::IndexOutOfRange);
}

TEST(Colormap, HeatEndpoints) {
  EXPECT_EQ(apply_colormap(0.0, Colormap::heat), (std::array<std::uint8_t, 3>{0, 0, 0}));
  EXPECT_EQ(apply_colormap(1.0, Colormap::heat), (std::array<std::uint8_t, 3>{255, 255, 255}));
}

TEST(WritePng, ProducesPngSignature) {
  TempDir dir;
  const auto img = render_slice(testing::random_volume({8, 6, 3}, 3), Axis::y, 1, Colormap::heat);
  write_png(img, dir / "s.png");
  const auto bytes = read_bytes(dir / "s.png");
  ASSERT_GT(bytes.size(), 8u);
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 8),
            (std::vector<std::uint8_t>{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'}));
  EXPECT_EQ(code_of([&] { write_png(img, fs::path("/nonexistent/x.png")); }), ErrorCode::IoFailure);
}

}  // namespace
}  // namespace volsal::io

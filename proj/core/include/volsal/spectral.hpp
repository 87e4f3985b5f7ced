#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "volsal/grid.hpp"

namespace volsal::spectral {

inline constexpr std::size_t kDefaultCubeSide = 5;

// Placement of the overlapping L^3 analysis windows inside a volume.
//
// Centers along each axis form the progression h, h+s, h+2s, ... with
// h = (L-1)/2; if that progression stops short of the last admissible center
// (extent-1-h), one more center is appended there so every sample is covered.
// With s <= floor(L/2) adjacent windows overlap by (L-s)/L > 1/2 per axis.
struct WindowGrid {
  Dims3 volume_dims;
  std::size_t cube_side = kDefaultCubeSide;
  std::size_t stride = kDefaultCubeSide / 2;
  std::vector<std::size_t> centers_t;
  std::vector<std::size_t> centers_x;
  std::vector<std::size_t> centers_y;

  std::size_t half() const noexcept { return (cube_side - 1) / 2; }
  Dims3 coarse_dims() const noexcept {
    return {centers_t.size(), centers_x.size(), centers_y.size()};
  }
  const std::vector<std::size_t>& centers(Axis a) const noexcept {
    return a == Axis::t ? centers_t : (a == Axis::x ? centers_x : centers_y);
  }
  std::size_t window_count() const noexcept { return coarse_dims().count(); }
};

// Throws EvenCube, BadConfig (L < 3), CubeTooLarge or BadStride.
WindowGrid build_window_grid(Dims3 dims, std::size_t cube_side, std::size_t stride);

// Centers per axis for a single extent; exposed for testing.
std::vector<std::size_t> axis_centers(std::size_t extent, std::size_t cube_side,
                                      std::size_t stride);

// L^3 real samples f[p,q,r], p along t, stored p + L*q + L*L*r.
struct LocalCube {
  std::size_t side = 0;
  std::vector<double> samples;

  explicit LocalCube(std::size_t l = 0) : side(l), samples(l * l * l, 0.0) {}
  double& operator()(std::size_t p, std::size_t q, std::size_t r) noexcept {
    return samples[p + side * (q + side * r)];
  }
  double operator()(std::size_t p, std::size_t q, std::size_t r) const noexcept {
    return samples[p + side * (q + side * r)];
  }
};

// Copies the window centered at (ct, cx, cy) into `out`.
void extract_cube(const Volume3& volume, std::size_t side, std::size_t ct, std::size_t cx,
                  std::size_t cy, LocalCube& out);
LocalCube extract_cube(const Volume3& volume, std::size_t side, std::size_t ct, std::size_t cx,
                       std::size_t cy);

// Centered local spectrum with signed frequency indices i, j, k in
// [-(L-1)/2, (L-1)/2] for the t, x, y axes; (0,0,0) is the DC bin.
class SpectralCube {
 public:
  SpectralCube() = default;
  explicit SpectralCube(std::size_t side)
      : side_(side), values_(side * side * side) {}

  std::size_t side() const noexcept { return side_; }
  int half() const noexcept { return static_cast<int>(side_ - 1) / 2; }

  std::size_t offset(int i, int j, int k) const noexcept {
    const int h = half();
    const auto l = side_;
    return static_cast<std::size_t>(i + h) +
           l * (static_cast<std::size_t>(j + h) + l * static_cast<std::size_t>(k + h));
  }
  std::complex<double>& at(int i, int j, int k) noexcept { return values_[offset(i, j, k)]; }
  const std::complex<double>& at(int i, int j, int k) const noexcept {
    return values_[offset(i, j, k)];
  }

  std::span<std::complex<double>> values() noexcept { return values_; }
  std::span<const std::complex<double>> values() const noexcept { return values_; }

 private:
  std::size_t side_ = 0;
  std::vector<std::complex<double>> values_;
};

// Forward 3-D DFT with 1/L^3 normalization, evaluated as three passes of
// 1-D transforms against a cached twiddle table, then rotated so the DC bin
// sits at the cube center. One instance per thread; forward() reuses scratch.
class LocalFft {
 public:
  explicit LocalFft(std::size_t side);

  std::size_t side() const noexcept { return side_; }
  void forward(const LocalCube& cube, SpectralCube& out);

 private:
  std::size_t side_;
  std::vector<std::complex<double>> twiddle_;
  std::vector<std::complex<double>> a_;
  std::vector<std::complex<double>> b_;
};

SpectralCube local_fft(const LocalCube& cube);

// Literal triple-sum transcription of the normalized DFT, O(L^6). Shares no
// code with LocalFft; used as a reference in tests.
SpectralCube oracle_dft(const LocalCube& cube);

// Directional magnitude decompositions of one spectrum, same centered layout
// as SpectralCube. For bin (i,j,k) with r^2 = i^2+j^2+k^2:
//   ft = |F| sqrt(j^2+k^2)/r,  fx = |F| sqrt(i^2+k^2)/r,  fy = |F| sqrt(i^2+j^2)/r.
// The DC bin has no direction; it is stored as 0 and never read.
struct ProjectedSpectra {
  std::size_t side = 0;
  std::vector<double> ft;
  std::vector<double> fx;
  std::vector<double> fy;

  std::size_t center_offset() const noexcept {
    const std::size_t h = (side - 1) / 2;
    return h + side * (h + side * h);
  }
};

// Per-bin factors for one cube side, cached by callers that project many
// spectra of the same size.
class ProjectionFactors {
 public:
  explicit ProjectionFactors(std::size_t side);

  std::size_t side() const noexcept { return side_; }
  std::span<const double> t() const noexcept { return t_; }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }

 private:
  std::size_t side_;
  std::vector<double> t_, x_, y_;
};

void project_spectrum(const SpectralCube& spectrum, const ProjectionFactors& factors,
                      ProjectedSpectra& out);
ProjectedSpectra project_spectrum(const SpectralCube& spectrum);

struct EnergyFeatures {
  double et = 0.0;
  double ex = 0.0;
  double ey = 0.0;
};

// Absolute mean of each projected grid over the L^3-1 non-DC bins.
EnergyFeatures energy_features(const ProjectedSpectra& projected);

struct EnergyGrids {
  RealGrid et;
  RealGrid ex;
  RealGrid ey;

  const RealGrid& operator[](Axis a) const noexcept {
    return a == Axis::t ? et : (a == Axis::x ? ex : ey);
  }
};

// Runs extract -> local_fft -> project -> energy for every window. Each window
// writes only its own output cell, so the result is identical for any
// `threads` value (0 = all cores).
EnergyGrids compute_energy_grids(const Volume3& volume, const WindowGrid& grid,
                                 std::size_t threads = 1);

}  // namespace volsal::spectral

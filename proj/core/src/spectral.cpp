#include "volsal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "volsal/error.hpp"
#include "volsal/parallel.hpp"

namespace volsal::spectral {
namespace {

void validate_cube_side(std::size_t side) {
  if (side % 2 == 0) {
    throw Error(ErrorCode::EvenCube, "cube side " + std::to_string(side) + " has no center voxel");
  }
  if (side < 3) {
    throw Error(ErrorCode::BadConfig, "cube side must be at least 3");
  }
}

}  // namespace

std::vector<std::size_t> axis_centers(std::size_t extent, std::size_t cube_side,
                                      std::size_t stride) {
  const std::size_t h = (cube_side - 1) / 2;
  const std::size_t last = extent - 1 - h;
  std::vector<std::size_t> centers;
  for (std::size_t c = h; c <= last; c += stride) centers.push_back(c);
  if (centers.back() != last) centers.push_back(last);
  return centers;
}

WindowGrid build_window_grid(Dims3 dims, std::size_t cube_side, std::size_t stride) {
  validate_cube_side(cube_side);
  if (cube_side > std::min({dims.t, dims.x, dims.y})) {
    throw Error(ErrorCode::CubeTooLarge, "cube side " + std::to_string(cube_side) +
                                             " exceeds the smallest volume extent");
  }
  if (stride < 1 || stride > cube_side / 2) {
    throw Error(ErrorCode::BadStride, "stride " + std::to_string(stride) +
                                          " must lie in [1, " + std::to_string(cube_side / 2) +
                                          "] to keep windows more than half overlapped");
  }
  WindowGrid grid;
  grid.volume_dims = dims;
  grid.cube_side = cube_side;
  grid.stride = stride;
  grid.centers_t = axis_centers(dims.t, cube_side, stride);
  grid.centers_x = axis_centers(dims.x, cube_side, stride);
  grid.centers_y = axis_centers(dims.y, cube_side, stride);
  return grid;
}

void extract_cube(const Volume3& volume, std::size_t side, std::size_t ct, std::size_t cx,
                  std::size_t cy, LocalCube& out) {
  const std::size_t h = (side - 1) / 2;
  if (out.side != side) out = LocalCube(side);
  double* dst = out.samples.data();
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t q = 0; q < side; ++q) {
      const float* src = &volume(ct - h, cx - h + q, cy - h + r);
      for (std::size_t p = 0; p < side; ++p) *dst++ = src[p];
    }
  }
}

LocalCube extract_cube(const Volume3& volume, std::size_t side, std::size_t ct, std::size_t cx,
                       std::size_t cy) {
  LocalCube cube(side);
  extract_cube(volume, side, ct, cx, cy, cube);
  return cube;
}

// ---------------------------------------------------------------------------
// LocalFft

LocalFft::LocalFft(std::size_t side)
    : side_(side), twiddle_(side), a_(side * side * side), b_(side * side * side) {
  for (std::size_t m = 0; m < side; ++m) {
    twiddle_[m] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) /
                                      static_cast<double>(side));
  }
}

void LocalFft::forward(const LocalCube& cube, SpectralCube& out) {
  const std::size_t l = side_;
  const std::size_t l2 = l * l;
  if (out.side() != l) out = SpectralCube(l);

  // Pass 1 along p (contiguous): a[mu + l*q + l2*r]
  for (std::size_t qr = 0; qr < l2; ++qr) {
    const double* f = cube.samples.data() + l * qr;
    std::complex<double>* dst = a_.data() + l * qr;
    for (std::size_t mu = 0; mu < l; ++mu) {
      std::complex<double> acc{};
      std::size_t m = 0;
      for (std::size_t p = 0; p < l; ++p) {
        acc += f[p] * twiddle_[m];
        m += mu;
        if (m >= l) m -= l;
      }
      dst[mu] = acc;
    }
  }
  // Pass 2 along q: b[mu + l*nu + l2*r]
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t mu = 0; mu < l; ++mu) {
      const std::complex<double>* src = a_.data() + mu + l2 * r;
      for (std::size_t nu = 0; nu < l; ++nu) {
        std::complex<double> acc{};
        std::size_t m = 0;
        for (std::size_t q = 0; q < l; ++q) {
          acc += src[l * q] * twiddle_[m];
          m += nu;
          if (m >= l) m -= l;
        }
        b_[mu + l * nu + l2 * r] = acc;
      }
    }
  }
  // Pass 3 along r, then normalize and rotate DC to the center.
  const double norm = 1.0 / static_cast<double>(l * l2);
  const std::size_t h = (l - 1) / 2;
  auto centered = [&](std::size_t bin) { return (bin + h) % l; };
  auto values = out.values();
  for (std::size_t nu = 0; nu < l; ++nu) {
    for (std::size_t mu = 0; mu < l; ++mu) {
      const std::complex<double>* src = b_.data() + mu + l * nu;
      for (std::size_t om = 0; om < l; ++om) {
        std::complex<double> acc{};
        std::size_t m = 0;
        for (std::size_t r = 0; r < l; ++r) {
          acc += src[l2 * r] * twiddle_[m];
          m += om;
          if (m >= l) m -= l;
        }
        values[centered(mu) + l * (centered(nu) + l * centered(om))] = acc * norm;
      }
    }
  }
}

SpectralCube local_fft(const LocalCube& cube) {
  LocalFft fft(cube.side);
  SpectralCube out(cube.side);
  fft.forward(cube, out);
  return out;
}

// ---------------------------------------------------------------------------
// Projection and energy

ProjectionFactors::ProjectionFactors(std::size_t side)
    : side_(side), t_(side * side * side), x_(side * side * side), y_(side * side * side) {
  const int h = static_cast<int>(side - 1) / 2;
  std::size_t o = 0;
  for (int k = -h; k <= h; ++k) {
    for (int j = -h; j <= h; ++j) {
      for (int i = -h; i <= h; ++i, ++o) {
        const int r2 = i * i + j * j + k * k;
        if (r2 == 0) {
          t_[o] = x_[o] = y_[o] = 0.0;
          continue;
        }
        const double r = std::sqrt(static_cast<double>(r2));
        t_[o] = std::sqrt(static_cast<double>(j * j + k * k)) / r;
        x_[o] = std::sqrt(static_cast<double>(i * i + k * k)) / r;
        y_[o] = std::sqrt(static_cast<double>(i * i + j * j)) / r;
      }
    }
  }
}

void project_spectrum(const SpectralCube& spectrum, const ProjectionFactors& factors,
                      ProjectedSpectra& out) {
  const std::size_t n = spectrum.values().size();
  out.side = spectrum.side();
  out.ft.resize(n);
  out.fx.resize(n);
  out.fy.resize(n);
  const auto values = spectrum.values();
  const auto ft = factors.t();
  const auto fx = factors.x();
  const auto fy = factors.y();
  for (std::size_t o = 0; o < n; ++o) {
    const double mag = std::abs(values[o]);
    out.ft[o] = mag * ft[o];
    out.fx[o] = mag * fx[o];
    out.fy[o] = mag * fy[o];
  }
  const std::size_t c = out.center_offset();
  out.ft[c] = out.fx[c] = out.fy[c] = 0.0;
}

ProjectedSpectra project_spectrum(const SpectralCube& spectrum) {
  ProjectedSpectra out;
  project_spectrum(spectrum, ProjectionFactors(spectrum.side()), out);
  return out;
}

EnergyFeatures energy_features(const ProjectedSpectra& projected) {
  const std::size_t n = projected.ft.size();
  const std::size_t c = projected.center_offset();
  EnergyFeatures e;
  for (std::size_t o = 0; o < n; ++o) {
    if (o == c) continue;
    e.et += std::abs(projected.ft[o]);
    e.ex += std::abs(projected.fx[o]);
    e.ey += std::abs(projected.fy[o]);
  }
  const double count = static_cast<double>(n - 1);
  e.et /= count;
  e.ex /= count;
  e.ey /= count;
  return e;
}

EnergyGrids compute_energy_grids(const Volume3& volume, const WindowGrid& grid,
                                 std::size_t threads) {
  if (volume.dims() != grid.volume_dims) {
    throw Error(ErrorCode::ShapeMismatch, "window grid was built for different volume dims");
  }
  const Dims3 coarse = grid.coarse_dims();
  EnergyGrids out{RealGrid(coarse), RealGrid(coarse), RealGrid(coarse)};
  const ProjectionFactors factors(grid.cube_side);

  parallel_for(coarse.count(), threads, [&](std::size_t begin, std::size_t end) {
    LocalFft fft(grid.cube_side);
    LocalCube cube(grid.cube_side);
    SpectralCube spectrum(grid.cube_side);
    ProjectedSpectra projected;
    for (std::size_t cell = begin; cell < end; ++cell) {
      const std::size_t it = cell % coarse.t;
      const std::size_t ix = (cell / coarse.t) % coarse.x;
      const std::size_t iy = cell / (coarse.t * coarse.x);
      extract_cube(volume, grid.cube_side, grid.centers_t[it], grid.centers_x[ix],
                   grid.centers_y[iy], cube);
      // The DC bin is discarded anyway; removing the mean first keeps its
      // round-off out of the other bins, so flat cubes give exact zeros.
      double mean = 0.0;
      for (double s : cube.samples) mean += s;
      mean /= static_cast<double>(cube.samples.size());
      for (double& s : cube.samples) s -= mean;
      fft.forward(cube, spectrum);
      project_spectrum(spectrum, factors, projected);
      const EnergyFeatures e = energy_features(projected);
      out.et.storage()[cell] = e.et;
      out.ex.storage()[cell] = e.ex;
      out.ey.storage()[cell] = e.ey;
    }
  });
  return out;
}

}  // namespace volsal::spectral

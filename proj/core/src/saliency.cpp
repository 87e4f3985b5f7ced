#include "volsal/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "volsal/error.hpp"
#include "volsal/parallel.hpp"

namespace volsal::saliency {
namespace {

void validate_window(std::size_t window) {
  if (window < 3 || window % 2 == 0) {
    throw Error(ErrorCode::BadWindow,
                "DCS window " + std::to_string(window) + " must be odd and at least 3");
  }
}

void validate_sigma(double sigma) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::BadSigma, "sigma must be positive");
  }
}

void require_same_shape(const RealGrid& a, const RealGrid& b) {
  if (a.dims() != b.dims()) throw Error(ErrorCode::ShapeMismatch, "grid shapes differ");
}

struct AxisSample {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double frac = 0.0;  // weight of hi
};

std::vector<AxisSample> nearest_map(const std::vector<std::size_t>& centers, std::size_t extent) {
  auto dist = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
  std::vector<AxisSample> out(extent);
  std::size_t c = 0;
  for (std::size_t v = 0; v < extent; ++v) {
    while (c + 1 < centers.size() && dist(centers[c + 1], v) < dist(centers[c], v)) ++c;
    out[v] = {c, c, 0.0};
  }
  return out;
}

std::vector<AxisSample> linear_map(const std::vector<std::size_t>& centers, std::size_t extent) {
  std::vector<AxisSample> out(extent);
  const std::size_t n = centers.size();
  std::size_t c = 0;
  for (std::size_t v = 0; v < extent; ++v) {
    if (v <= centers.front()) {
      out[v] = {0, 0, 0.0};
      continue;
    }
    if (v >= centers.back()) {
      out[v] = {n - 1, n - 1, 0.0};
      continue;
    }
    while (centers[c + 1] < v) ++c;
    const double span = static_cast<double>(centers[c + 1] - centers[c]);
    out[v] = {c, c + 1, static_cast<double>(v - centers[c]) / span};
  }
  return out;
}

}  // namespace

void validate_direction(Direction dir) {
  if (dir.t == 0 && dir.x == 0 && dir.y == 0) {
    throw Error(ErrorCode::BadDirection, "direction vector is zero");
  }
  if (std::gcd(std::gcd(dir.t, dir.x), dir.y) != 1) {
    throw Error(ErrorCode::BadDirection, "direction components share a common factor");
  }
}

std::string_view to_string(WeightMode mode) noexcept {
  return mode == WeightMode::as_written ? "as-written" : "difference-weighted";
}

WeightMode parse_weight_mode(std::string_view name) {
  if (name == "as-written") return WeightMode::as_written;
  if (name == "difference-weighted") return WeightMode::difference_weighted;
  throw Error(ErrorCode::BadConfig, "unknown weight mode '" + std::string(name) + "'");
}

std::string_view to_string(Upsample mode) noexcept {
  return mode == Upsample::nearest ? "nearest" : "trilinear";
}

Upsample parse_upsample(std::string_view name) {
  if (name == "nearest") return Upsample::nearest;
  if (name == "trilinear") return Upsample::trilinear;
  throw Error(ErrorCode::BadConfig, "unknown upsample mode '" + std::string(name) + "'");
}

std::vector<NeighborWeight> gaussian_weights(std::size_t window, double sigma) {
  validate_window(window);
  validate_sigma(sigma);
  const int h = static_cast<int>(window - 1) / 2;
  std::vector<NeighborWeight> out;
  out.reserve(window - 1);
  for (int o = -h; o <= h; ++o) {
    if (o == 0) continue;
    out.push_back({o, std::exp(-static_cast<double>(o * o) / (2.0 * sigma * sigma))});
  }
  return out;
}

void DcsConfig::validate() const {
  validate_window(window);
  validate_sigma(resolved_sigma());
  for (const auto& d : directions) validate_direction(d);
}

DcsResult dcs_saliency(const RealGrid& energy, Direction dir, std::size_t window, double sigma,
                       WeightMode mode, std::size_t threads) {
  validate_direction(dir);
  const auto weights = gaussian_weights(window, sigma);
  const Dims3 dims = energy.dims();
  if (dims.count() == 0) throw Error(ErrorCode::ShapeMismatch, "empty energy grid");

  DcsResult result{RealGrid(dims, 0.0), false};
  std::vector<unsigned char> has_neighbor(dims.count(), 0);
  const auto in_range = [](long v, std::size_t n) { return v >= 0 && v < static_cast<long>(n); };

  parallel_for(dims.count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t cell = begin; cell < end; ++cell) {
      const long t = static_cast<long>(cell % dims.t);
      const long x = static_cast<long>((cell / dims.t) % dims.x);
      const long y = static_cast<long>(cell / (dims.t * dims.x));
      const double center = energy.storage()[cell];
      double sum = 0.0;
      std::size_t q = 0;
      for (const auto& nw : weights) {
        const long nt = t + static_cast<long>(nw.offset) * dir.t;
        const long nx = x + static_cast<long>(nw.offset) * dir.x;
        const long ny = y + static_cast<long>(nw.offset) * dir.y;
        if (!in_range(nt, dims.t) || !in_range(nx, dims.x) || !in_range(ny, dims.y)) continue;
        const double neighbor = energy(static_cast<std::size_t>(nt), static_cast<std::size_t>(nx),
                                       static_cast<std::size_t>(ny));
        sum += mode == WeightMode::as_written ? std::abs(center - nw.weight * neighbor)
                                              : nw.weight * std::abs(center - neighbor);
        ++q;
      }
      if (q > 0) {
        result.map.storage()[cell] = sum / static_cast<double>(q);
        has_neighbor[cell] = 1;
      }
    }
  });

  result.degenerate =
      std::none_of(has_neighbor.begin(), has_neighbor.end(), [](unsigned char v) { return v; });
  return result;
}

void FusionWeights::validate() const {
  if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0) || !(a + b + c > 0.0) ||
      !std::isfinite(a + b + c)) {
    throw Error(ErrorCode::BadWeights, "fusion weights must be non-negative with a positive sum");
  }
}

RealGrid fuse(const RealGrid& st, const RealGrid& sx, const RealGrid& sy,
              const FusionWeights& weights) {
  require_same_shape(st, sx);
  require_same_shape(st, sy);
  weights.validate();
  RealGrid out(st.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.storage()[i] = weights.a * st.storage()[i] + weights.b * sx.storage()[i] +
                       weights.c * sy.storage()[i];
  }
  return out;
}

RealGrid upsample(const RealGrid& coarse, const spectral::WindowGrid& grid, Upsample mode) {
  if (coarse.dims() != grid.coarse_dims()) {
    throw Error(ErrorCode::ShapeMismatch, "coarse map does not match the window grid");
  }
  const Dims3 full = grid.volume_dims;
  auto build = [&](Axis a) {
    return mode == Upsample::nearest ? nearest_map(grid.centers(a), full[a])
                                     : linear_map(grid.centers(a), full[a]);
  };
  const auto mt = build(Axis::t);
  const auto mx = build(Axis::x);
  const auto my = build(Axis::y);

  RealGrid out(full);
  for (std::size_t y = 0; y < full.y; ++y) {
    const AxisSample sy = my[y];
    for (std::size_t x = 0; x < full.x; ++x) {
      const AxisSample sx = mx[x];
      for (std::size_t t = 0; t < full.t; ++t) {
        const AxisSample st = mt[t];
        if (mode == Upsample::nearest) {
          out(t, x, y) = coarse(st.lo, sx.lo, sy.lo);
          continue;
        }
        auto lerp_t = [&](std::size_t cx, std::size_t cy) {
          const double lo = coarse(st.lo, cx, cy);
          return st.frac == 0.0 ? lo : lo + st.frac * (coarse(st.hi, cx, cy) - lo);
        };
        auto lerp_tx = [&](std::size_t cy) {
          const double lo = lerp_t(sx.lo, cy);
          return sx.frac == 0.0 ? lo : lo + sx.frac * (lerp_t(sx.hi, cy) - lo);
        };
        const double lo = lerp_tx(sy.lo);
        out(t, x, y) = sy.frac == 0.0 ? lo : lo + sy.frac * (lerp_tx(sy.hi) - lo);
      }
    }
  }
  return out;
}

Volume3 normalize_min_max(const RealGrid& map) {
  Volume3 out(map.dims(), 0.0f);
  if (map.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(map.storage().begin(), map.storage().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < map.size(); ++i) {
    out.storage()[i] = static_cast<float>((map.storage()[i] - lo) / range);
  }
  return out;
}

Volume3 upsample_and_normalize(const RealGrid& coarse, const spectral::WindowGrid& grid,
                               Upsample mode) {
  return normalize_min_max(upsample(coarse, grid, mode));
}

DcsConfig SaliencyParams::dcs() const {
  DcsConfig cfg;
  cfg.directions = directions;
  cfg.window = dcs_window.value_or(cube_side);
  cfg.sigma = sigma;
  cfg.mode = weight_mode;
  return cfg;
}

void SaliencyParams::validate() const {
  if (cube_side % 2 == 0) {
    throw Error(ErrorCode::EvenCube,
                "cube side " + std::to_string(cube_side) + " has no center voxel");
  }
  if (cube_side < 3) throw Error(ErrorCode::BadConfig, "cube side must be at least 3");
  const std::size_t s = resolved_stride();
  if (s < 1 || s > cube_side / 2) {
    throw Error(ErrorCode::BadStride, "stride " + std::to_string(s) + " must lie in [1, " +
                                          std::to_string(cube_side / 2) + "]");
  }
  dcs().validate();
  weights.validate();
}

SaliencyMap compute_saliency(const Volume3& volume, const SaliencyParams& params) {
  params.validate();
  SaliencyMap out;
  out.grid = spectral::build_window_grid(volume.dims(), params.cube_side, params.resolved_stride());
  out.energies = spectral::compute_energy_grids(volume, out.grid, params.threads);

  const DcsConfig dcs = params.dcs();
  const double sigma = dcs.resolved_sigma();
  const std::array<Axis, 3> axes{Axis::t, Axis::x, Axis::y};
  const std::array<const char*, 3> names{"t", "x", "y"};
  std::array<RealGrid*, 3> maps{&out.st, &out.sx, &out.sy};
  for (std::size_t m = 0; m < 3; ++m) {
    DcsResult r = dcs_saliency(out.energies[axes[m]], dcs.directions[m], dcs.window, sigma,
                               dcs.mode, params.threads);
    if (r.degenerate) {
      out.warnings.push_back(std::string("DegenerateAxis: coarse grid has no neighbors along the ") +
                             names[m] + "-map direction; S_" + names[m] + " is zero");
    }
    *maps[m] = std::move(r.map);
  }
  out.fused = fuse(out.st, out.sx, out.sy, params.weights);
  out.full = upsample_and_normalize(out.fused, out.grid, params.upsample);
  return out;
}

}  // namespace volsal::saliency

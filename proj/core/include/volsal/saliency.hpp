#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "volsal/grid.hpp"
#include "volsal/spectral.hpp"

namespace volsal::saliency {

// Integer step on the coarse window-center lattice, components in (t, x, y)
// order with no common factor, e.g. {1,0,0} along t or {1,1,0} along t-x.
struct Direction {
  int t = 1;
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Direction&, const Direction&) = default;
};

inline constexpr Direction kAlongT{1, 0, 0};
inline constexpr Direction kAlongX{0, 1, 0};
inline constexpr Direction kAlongY{0, 0, 1};

void validate_direction(Direction dir);

enum class WeightMode {
  as_written,           // |E_c - w * E_n|
  difference_weighted,  // w * |E_c - E_n|
};

std::string_view to_string(WeightMode mode) noexcept;
WeightMode parse_weight_mode(std::string_view name);

struct NeighborWeight {
  int offset = 0;
  double weight = 0.0;
};

// Offsets -(d-1)/2 .. (d-1)/2 excluding 0, weight exp(-o^2 / (2 sigma^2)).
// Not normalized. Sigma may be +infinity (uniform weights).
std::vector<NeighborWeight> gaussian_weights(std::size_t window, double sigma);

struct DcsConfig {
  // Direction used for the t, x and y energy maps respectively.
  std::array<Direction, 3> directions{kAlongT, kAlongX, kAlongY};
  std::size_t window = spectral::kDefaultCubeSide;
  std::optional<double> sigma;  // defaults to window / 3
  WeightMode mode = WeightMode::as_written;

  double resolved_sigma() const noexcept {
    return sigma.value_or(static_cast<double>(window) / 3.0);
  }
  void validate() const;
};

struct DcsResult {
  RealGrid map;
  // No cell has an in-bounds neighbor along the direction; map is all zero.
  bool degenerate = false;
};

// Directional center-surround comparison on one coarse energy grid. Each cell
// is compared with the cells at offsets o*dir, o in the window's nonzero
// offsets, that fall inside the grid; Q is the number of such neighbors.
DcsResult dcs_saliency(const RealGrid& energy, Direction dir, std::size_t window, double sigma,
                       WeightMode mode, std::size_t threads = 1);

struct FusionWeights {
  double a = 1.0 / 3.0;
  double b = 1.0 / 3.0;
  double c = 1.0 / 3.0;

  void validate() const;
};

RealGrid fuse(const RealGrid& st, const RealGrid& sx, const RealGrid& sy,
              const FusionWeights& weights);

enum class Upsample { nearest, trilinear };

std::string_view to_string(Upsample mode) noexcept;
Upsample parse_upsample(std::string_view name);

// Spreads coarse values (one per window center) over the full volume.
// Nearest picks the closest center per axis, the lower one on ties.
// Trilinear interpolates between bracketing centers and holds the edge value
// outside the first and last centers.
RealGrid upsample(const RealGrid& coarse, const spectral::WindowGrid& grid, Upsample mode);

// Global min-max to [0,1]; a constant map becomes all zeros.
Volume3 normalize_min_max(const RealGrid& map);

Volume3 upsample_and_normalize(const RealGrid& coarse, const spectral::WindowGrid& grid,
                               Upsample mode);

struct SaliencyParams {
  std::size_t cube_side = spectral::kDefaultCubeSide;
  std::optional<std::size_t> stride;       // defaults to floor(L/2)
  std::optional<std::size_t> dcs_window;   // defaults to L
  std::optional<double> sigma;             // defaults to d/3
  WeightMode weight_mode = WeightMode::as_written;
  std::array<Direction, 3> directions{kAlongT, kAlongX, kAlongY};
  FusionWeights weights;
  Upsample upsample = Upsample::nearest;
  std::size_t threads = 1;  // 0 = all cores

  std::size_t resolved_stride() const noexcept { return stride.value_or(cube_side / 2); }
  DcsConfig dcs() const;
  // Rejects invalid combinations before any compute starts.
  void validate() const;
};

struct SaliencyMap {
  spectral::WindowGrid grid;
  spectral::EnergyGrids energies;
  RealGrid st;
  RealGrid sx;
  RealGrid sy;
  RealGrid fused;
  Volume3 full;  // same dims as the input, values in [0,1]
  std::vector<std::string> warnings;
};

SaliencyMap compute_saliency(const Volume3& volume, const SaliencyParams& params);

}  // namespace volsal::saliency

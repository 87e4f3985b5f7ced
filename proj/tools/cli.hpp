#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volsal/error.hpp"
#include "volsal/saliency.hpp"
#include "volsal/volume_io.hpp"

namespace volsal::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kIoError = 3,
  kDataError = 4,
  kDegenerateGeometry = 5,
};

int exit_code_for(ErrorCode code) noexcept;

struct SliceRequest {
  Axis axis = Axis::y;
  std::size_t index = 0;
  io::Colormap colormap = io::Colormap::heat;
};

// Parses "axis:index:colormap", e.g. "y:32:heat".
SliceRequest parse_slice(const std::string& text);
// Parses "a,b,c".
saliency::FusionWeights parse_weights(const std::string& text);

struct RunConfig {
  std::filesystem::path input = "-";  // "-" reads stdin
  std::filesystem::path output;
  std::size_t cube = spectral::kDefaultCubeSide;
  std::optional<std::size_t> stride;
  std::optional<std::size_t> dcs_window;
  std::optional<double> sigma;
  saliency::WeightMode weight_mode = saliency::WeightMode::as_written;
  saliency::FusionWeights weights;
  saliency::Upsample upsample = saliency::Upsample::nearest;
  std::vector<SliceRequest> slices;
  std::size_t threads = 0;  // 0 = all cores
  bool coarse_maps = false;
  bool strict = false;

  saliency::SaliencyParams params() const;
  void validate() const;
};

// Paths of every artifact derived from the output path.
struct ArtifactPaths {
  std::filesystem::path saliency;
  std::filesystem::path manifest;
  std::filesystem::path coarse_t, coarse_x, coarse_y;

  static ArtifactPaths for_output(const std::filesystem::path& output);
  std::filesystem::path slice(const SliceRequest& request) const;
};

struct RunReport {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> warnings;
};

// Loads the input, computes the saliency map and writes all artifacts.
// Throws volsal::Error; on failure every file written so far is removed.
RunReport run(const RunConfig& config, std::istream& stdin_stream, std::ostream& log);

// "dims=2x2x2 dtype=f32 min=0 max=7 mean=3.5"
std::string info_line(const Volume3& volume);

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

// Full command-line entry point; returns the process exit status.
int main_entry(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err);

}  // namespace volsal::cli

#include "cli.hpp"

#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "volsal/parallel.hpp"
#include "volsal/synthkit.hpp"

namespace volsal::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::BadConfig, "cannot parse " + what + " from '" + s + "'");
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::BadConfig, "cannot parse " + what + " from '" + s + "'");
}

std::string axis_name(Axis a) { return a == Axis::t ? "t" : (a == Axis::x ? "x" : "y"); }
std::string colormap_name(io::Colormap c) { return c == io::Colormap::gray ? "gray" : "heat"; }

std::string dims_string(Dims3 d) {
  return std::to_string(d.t) + "x" + std::to_string(d.x) + "x" + std::to_string(d.y);
}

std::string exact(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string hex32(std::uint32_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << v;
  return os.str();
}

std::vector<std::uint8_t> read_input(const std::filesystem::path& path, std::istream& stdin_stream) {
  if (path.empty()) throw Error(ErrorCode::IoFailure, "empty input path");
  auto slurp = [](std::istream& in) {
    return std::vector<std::uint8_t>{std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>()};
  };
  if (path == "-") return slurp(stdin_stream);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return slurp(in);
}

// Removes every registered file unless release() is called.
class PartialOutputs {
 public:
  ~PartialOutputs() {
    if (released_) return;
    std::error_code ec;
    for (const auto& p : files_) std::filesystem::remove(p, ec);
  }
  void add(const std::filesystem::path& p) { files_.push_back(p); }
  std::vector<std::filesystem::path> release() {
    released_ = true;
    return files_;
  }

 private:
  std::vector<std::filesystem::path> files_;
  bool released_ = false;
};

Dims3 parse_dims(const std::string& text) {
  const auto parts = split(text, 'x');
  if (parts.size() == 1) {
    const auto n = parse_size(parts[0], "dims");
    return {n, n, n};
  }
  if (parts.size() == 3) {
    return {parse_size(parts[0], "dims"), parse_size(parts[1], "dims"),
            parse_size(parts[2], "dims")};
  }
  throw Error(ErrorCode::BadConfig, "dims must be N or TxXxY, got '" + text + "'");
}

std::array<double, 3> parse_triple(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw Error(ErrorCode::BadConfig, what + " needs three values");
  return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IoFailure:
      return kIoError;
    case ErrorCode::BadMagic:
    case ErrorCode::DimMismatch:
    case ErrorCode::NonFiniteSample:
      return kDataError;
    case ErrorCode::DegenerateAxis:
      return kDegenerateGeometry;
    default:
      return kConfigError;
  }
}

SliceRequest parse_slice(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw Error(ErrorCode::BadConfig, "slice must be axis:index:colormap, got '" + text + "'");
  }
  return {io::parse_axis(parts[0]), parse_size(parts[1], "slice index"),
          io::parse_colormap(parts[2])};
}

saliency::FusionWeights parse_weights(const std::string& text) {
  const auto w = parse_triple(text, "weights");
  saliency::FusionWeights out{w[0], w[1], w[2]};
  out.validate();
  return out;
}

saliency::SaliencyParams RunConfig::params() const {
  saliency::SaliencyParams p;
  p.cube_side = cube;
  p.stride = stride;
  p.dcs_window = dcs_window;
  p.sigma = sigma;
  p.weight_mode = weight_mode;
  p.weights = weights;
  p.upsample = upsample;
  p.threads = threads;
  return p;
}

void RunConfig::validate() const {
  if (output.empty() || output == "-") {
    throw Error(ErrorCode::BadConfig, "--output must name a file");
  }
  params().validate();
}

ArtifactPaths ArtifactPaths::for_output(const std::filesystem::path& output) {
  auto stem = output;
  stem.replace_extension();
  const std::string base = stem.string();
  return {output, std::filesystem::path(output.string() + ".manifest"),
          base + "_St.vol", base + "_Sx.vol", base + "_Sy.vol"};
}

std::filesystem::path ArtifactPaths::slice(const SliceRequest& r) const {
  auto stem = saliency;
  stem.replace_extension();
  return stem.string() + "_slice_" + axis_name(r.axis) + std::to_string(r.index) + "_" +
         colormap_name(r.colormap) + ".png";
}

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
    crc = ::crc32(crc, bytes.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::string info_line(const Volume3& volume) {
  const auto values = volume.values();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double sum = 0.0;
  for (float v : values) sum += v;
  std::ostringstream os;
  os << "dims=" << dims_string(volume.dims()) << " dtype=f32 min=" << *lo << " max=" << *hi
     << " mean=" << sum / static_cast<double>(values.size());
  return os.str();
}

RunReport run(const RunConfig& config, std::istream& stdin_stream, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  const auto params = config.params();

  const auto bytes = read_input(config.input, stdin_stream);
  const Volume3 volume = io::decode_volume(bytes);
  const std::uint32_t input_crc = crc32(bytes);
  for (const auto& s : config.slices) {
    if (s.index >= volume.dims()[s.axis]) {
      throw Error(ErrorCode::IndexOutOfRange, "slice " + axis_name(s.axis) + ":" +
                                                  std::to_string(s.index) + " outside the volume");
    }
  }

  const saliency::SaliencyMap map = saliency::compute_saliency(volume, params);
  for (const auto& w : map.warnings) log << "warning: " << w << "\n";
  if (config.strict && !map.warnings.empty()) {
    throw Error(ErrorCode::DegenerateAxis, "degenerate geometry escalated by --strict");
  }

  const auto paths = ArtifactPaths::for_output(config.output);
  PartialOutputs outputs;
  const auto output_bytes = io::encode_volume(map.full);
  {
    outputs.add(paths.saliency);
    std::ofstream out(paths.saliency, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(output_bytes.data()),
              static_cast<std::streamsize>(output_bytes.size()));
    if (!out.flush()) throw Error(ErrorCode::IoFailure, "cannot write " + paths.saliency.string());
  }
  if (config.coarse_maps) {
    const std::array<std::pair<const RealGrid*, std::filesystem::path>, 3> coarse{
        {{&map.st, paths.coarse_t}, {&map.sx, paths.coarse_x}, {&map.sy, paths.coarse_y}}};
    for (const auto& [grid, path] : coarse) {
      Volume3 v(grid->dims());
      std::transform(grid->storage().begin(), grid->storage().end(), v.storage().begin(),
                     [](double d) { return static_cast<float>(d); });
      outputs.add(path);
      io::store_volume(v, path);
    }
  }
  for (const auto& s : config.slices) {
    const auto path = paths.slice(s);
    outputs.add(path);
    io::write_png(io::render_slice(map.full, s.axis, s.index, s.colormap), path);
  }

  const auto& dcs = params.dcs();
  std::ostringstream manifest;
  manifest << "volsal_version=" << kVersion << "\n"
           << "input=" << config.input.string() << "\n"
           << "input_crc32=" << hex32(input_crc) << "\n"
           << "input_dims=" << dims_string(volume.dims()) << "\n"
           << "output=" << config.output.string() << "\n"
           << "output_crc32=" << hex32(crc32(output_bytes)) << "\n"
           << "cube=" << params.cube_side << "\n"
           << "stride=" << params.resolved_stride() << "\n"
           << "dcs_window=" << dcs.window << "\n"
           << "sigma=" << exact(dcs.resolved_sigma()) << "\n"
           << "weight_mode=" << saliency::to_string(dcs.mode) << "\n"
           << "weights=" << exact(params.weights.a) << "," << exact(params.weights.b) << ","
           << exact(params.weights.c) << "\n"
           << "directions=";
  for (std::size_t m = 0; m < 3; ++m) {
    const auto& d = dcs.directions[m];
    manifest << (m ? ";" : "") << "txy"[m] << ":" << d.t << "," << d.x << "," << d.y;
  }
  manifest << "\n"
           << "upsample=" << saliency::to_string(params.upsample) << "\n"
           << "coarse_dims=" << dims_string(map.grid.coarse_dims()) << "\n"
           << "coarse_maps=" << (config.coarse_maps ? 1 : 0) << "\n"
           << "slices=";
  for (std::size_t i = 0; i < config.slices.size(); ++i) {
    const auto& s = config.slices[i];
    manifest << (i ? ";" : "") << axis_name(s.axis) << ":" << s.index << ":"
             << colormap_name(s.colormap);
  }
  manifest << "\n"
           << "strict=" << (config.strict ? 1 : 0) << "\n"
           << "threads=" << resolve_threads(config.threads) << "\n"
           << "warnings=" << map.warnings.size() << "\n"
           << "wall_time_s="
           << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
           << "\n";
  {
    outputs.add(paths.manifest);
    std::ofstream out(paths.manifest, std::ios::trunc);
    out << manifest.str();
    if (!out.flush()) throw Error(ErrorCode::IoFailure, "cannot write " + paths.manifest.string());
  }

  return {outputs.release(), map.warnings};
}

int main_entry(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Spectral-projection saliency maps for 3-D volumes", "volsal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // run
  RunConfig rc;
  std::string input = "-", output, weight_mode = "as-written", weights, upsample = "nearest";
  std::vector<std::string> slices;
  std::size_t stride = 0, dcs_window = 0;
  double sigma = 0.0;
  auto* run_cmd = app.add_subcommand("run", "Compute a saliency volume");
  run_cmd->add_option("--input", input, "VOLSAL01 input volume, '-' for stdin")->capture_default_str();
  run_cmd->add_option("--output", output, "Saliency volume to write")->required();
  run_cmd->add_option("--cube", rc.cube, "Local cube side L (odd)")->capture_default_str();
  auto* stride_opt = run_cmd->add_option("--stride", stride, "Window stride (default floor(L/2))");
  auto* window_opt = run_cmd->add_option("--dcs-window", dcs_window, "DCS window d (default L)");
  auto* sigma_opt = run_cmd->add_option("--sigma", sigma, "Gaussian sigma (default d/3)");
  run_cmd->add_option("--weight-mode", weight_mode, "as-written | difference-weighted")
      ->capture_default_str();
  run_cmd->add_option("--weights", weights, "Fusion weights a,b,c (default equal)");
  run_cmd->add_option("--upsample", upsample, "nearest | trilinear")->capture_default_str();
  run_cmd->add_option("--slice", slices, "PNG slice export axis:index:colormap (repeatable)");
  run_cmd->add_option("--threads", rc.threads, "Worker threads, 0 = all cores")
      ->capture_default_str();
  run_cmd->add_flag("--coarse-maps", rc.coarse_maps, "Also write the coarse S_t, S_x, S_y maps");
  run_cmd->add_flag("--strict", rc.strict, "Fail with exit code 5 on degenerate geometry");

  // info
  std::string info_path;
  auto* info_cmd = app.add_subcommand("info", "Print a volume header summary");
  info_cmd->add_option("path", info_path, "VOLSAL01 file")->required();

  // synth
  std::string kind, synth_dims = "64", synth_output = "-", mask_output;
  std::uint64_t seed = 0;
  double amplitude = 1.0, noise = 0.1, offset = 0.0, radius = 0.0, relief = 3.0;
  std::string normal, center, position;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic test volume");
  synth_cmd->add_option("kind", kind, "fault | blob | facies | constant | impulse")->required();
  synth_cmd->add_option("--dims", synth_dims, "N or TxXxY")->capture_default_str();
  synth_cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  synth_cmd->add_option("--output", synth_output, "Output volume, '-' for stdout")
      ->capture_default_str();
  synth_cmd->add_option("--mask", mask_output, "Write the ground-truth mask as a 0/1 volume");
  synth_cmd->add_option("--amplitude", amplitude, "Peak amplitude")->capture_default_str();
  synth_cmd->add_option("--noise", noise, "Noise fraction in [0,1]")->capture_default_str();
  auto* offset_opt = synth_cmd->add_option("--offset", offset, "Fault/facies offset");
  auto* normal_opt = synth_cmd->add_option("--normal", normal, "Fault normal t,x,y");
  auto* radius_opt = synth_cmd->add_option("--radius", radius, "Blob radius");
  auto* center_opt = synth_cmd->add_option("--center", center, "Blob center t,x,y");
  auto* position_opt = synth_cmd->add_option("--position", position, "Impulse position t,x,y");
  synth_cmd->add_option("--relief", relief, "Facies interface relief")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "volsal: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*run_cmd) {
      rc.input = input;
      rc.output = output;
      if (*stride_opt) rc.stride = stride;
      if (*window_opt) rc.dcs_window = dcs_window;
      if (*sigma_opt) rc.sigma = sigma;
      rc.weight_mode = saliency::parse_weight_mode(weight_mode);
      if (!weights.empty()) rc.weights = parse_weights(weights);
      rc.upsample = saliency::parse_upsample(upsample);
      for (const auto& s : slices) rc.slices.push_back(parse_slice(s));
      run(rc, in, err);
      return kSuccess;
    }
    if (*info_cmd) {
      out << info_line(io::load_volume(std::filesystem::path(info_path))) << "\n";
      return kSuccess;
    }
    if (*synth_cmd) {
      synth::SyntheticSpec spec;
      spec.kind = synth::parse_kind(kind);
      spec.dims = parse_dims(synth_dims);
      spec.seed = seed;
      spec.amplitude = amplitude;
      spec.noise = noise;
      spec.relief = relief;
      if (*offset_opt) spec.offset = offset;
      if (*normal_opt) spec.normal = parse_triple(normal, "normal");
      if (*radius_opt) spec.radius = radius;
      if (*center_opt) spec.center = parse_triple(center, "center");
      if (*position_opt) {
        const auto p = parse_triple(position, "position");
        spec.position = std::array<std::size_t, 3>{};
        for (std::size_t i = 0; i < 3; ++i) {
          if (p[i] < 0.0 || p[i] != static_cast<double>(static_cast<std::size_t>(p[i]))) {
            throw Error(ErrorCode::BadConfig, "position must be non-negative integers");
          }
          (*spec.position)[i] = static_cast<std::size_t>(p[i]);
        }
      }
      const auto generated = synth::generate(spec);
      if (synth_output == "-") {
        io::store_volume(generated.volume, out);
      } else {
        io::store_volume(generated.volume, std::filesystem::path(synth_output));
      }
      if (!mask_output.empty()) {
        Volume3 mask(generated.mask.dims());
        std::transform(generated.mask.storage().begin(), generated.mask.storage().end(),
                       mask.storage().begin(), [](std::uint8_t m) { return m ? 1.0f : 0.0f; });
        io::store_volume(mask, std::filesystem::path(mask_output));
      }
      return kSuccess;
    }
  } catch (const Error& e) {
    err << "volsal: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "volsal: out of memory\n";
    return kDataError;
  }
  return kConfigError;
}

}  // namespace volsal::cli

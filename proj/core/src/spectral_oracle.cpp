#include <cmath>
#include <numbers>

#include "volsal/spectral.hpp"

namespace volsal::spectral {

SpectralCube oracle_dft(const LocalCube& cube) {
  const int l = static_cast<int>(cube.side);
  const int h = (l - 1) / 2;
  const double scale = 1.0 / (static_cast<double>(l) * l * l);
  SpectralCube out(cube.side);
  for (int w = 0; w < l; ++w) {
    for (int v = 0; v < l; ++v) {
      for (int u = 0; u < l; ++u) {
        std::complex<double> sum{};
        for (int r = 0; r < l; ++r) {
          for (int q = 0; q < l; ++q) {
            for (int p = 0; p < l; ++p) {
              const double phase = -2.0 * std::numbers::pi * (p * u + q * v + r * w) / l;
              sum += cube(p, q, r) * std::complex<double>(std::cos(phase), std::sin(phase));
            }
          }
        }
        const int i = u <= h ? u : u - l;
        const int j = v <= h ? v : v - l;
        const int k = w <= h ? w : w - l;
        out.at(i, j, k) = sum * scale;
      }
    }
  }
  return out;
}

}  // namespace volsal::spectral

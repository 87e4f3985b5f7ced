#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace volsal {

enum class ErrorCode {
  // volume_io
  BadMagic,
  DimMismatch,
  NonFiniteSample,
  IoFailure,
  IndexOutOfRange,
  // spectral
  CubeTooLarge,
  BadStride,
  EvenCube,
  // saliency
  BadWindow,
  BadSigma,
  BadDirection,
  BadWeights,
  DegenerateAxis,
  ShapeMismatch,
  // synthkit
  BadSpec,
  // cli
  BadConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// command-line front end can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace volsal

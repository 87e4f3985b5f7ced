#include "volsal/error.hpp"

namespace volsal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CubeTooLarge: return "CubeTooLarge";
    case ErrorCode::BadStride: return "BadStride";
    case ErrorCode::EvenCube: return "EvenCube";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::BadSigma: return "BadSigma";
    case ErrorCode::BadDirection: return "BadDirection";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::DegenerateAxis: return "DegenerateAxis";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace volsal

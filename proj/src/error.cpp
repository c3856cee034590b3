#include "kinex/error.hpp"

namespace kinex {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::TopologyMismatch: return "TopologyMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NotDecaying: return "NotDecaying";
    case ErrorCode::WindowContainsCrossing: return "WindowContainsCrossing";
    case ErrorCode::LogDomainError: return "LogDomainError";
    case ErrorCode::NoDecayWindow: return "NoDecayWindow";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

}  // namespace kinex

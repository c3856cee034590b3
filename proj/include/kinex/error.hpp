#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kinex {

enum class ErrorCode {
  InvalidSize,
  TopologyMismatch,
  InvalidParameter,
  ShapeError,
  InsufficientData,
  NotDecaying,
  WindowContainsCrossing,
  LogDomainError,
  NoDecayWindow,
  ConfigError,
  IoError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above, so
/// callers (the CLI fit reports in particular) can tag rows without parsing
/// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace kinex

#pragma once

#include <stdexcept>
#include <string>

namespace qhe {

enum class ErrorCode {
  InvalidArgument,
  InvalidGate,
  UnsupportedSize,
  Validation,
  Parse,
  Io,
};

// Single exception type for the library; the C API maps `code()` onto
// status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qhe

#pragma once

#include <stdexcept>
#include <string>

namespace esnufft {

enum class ErrorCode {
  invalid_argument,
  invalid_state,
  length_mismatch,
  numerical_failure,
  out_of_memory,
  overflow,
};

/// Every failure raised by the library. `code()` classifies it; `what()` carries
/// a message fit for a user.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::invalid_state: return "invalid state";
    case ErrorCode::length_mismatch: return "length mismatch";
    case ErrorCode::numerical_failure: return "numerical failure";
    case ErrorCode::out_of_memory: return "out of memory";
    case ErrorCode::overflow: return "overflow";
  }
  return "unknown";
}

}  // namespace esnufft

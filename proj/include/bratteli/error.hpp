#pragma once

#include <stdexcept>
#include <string>

namespace bratteli {

enum class ErrorCode {
  InvalidInput,
  InsufficientPrefix,
  ShapeMismatch,
  OutOfRange,
  NotUnital,
  CapExceeded,
  Precondition,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bratteli

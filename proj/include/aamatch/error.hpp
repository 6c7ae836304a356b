#pragma once

#include <stdexcept>
#include <string>

namespace aamatch {

/// Error category, kept coarse so it can be mapped onto C API status codes.
enum class ErrorKind {
  InvalidArgument,
  Parse,
  Validation,
  LimitExceeded,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throwError(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

} // namespace aamatch

#pragma once

#include <stdexcept>
#include <string>

namespace csi {

// Failure categories; the CLI maps these onto process exit codes.
enum class ErrorKind {
  Validation,        // malformed input data
  InvalidParameter,  // out-of-range or inconsistent argument
  Domain,            // lookup outside a declared domain
  Capacity,          // instance exceeds a configured cap
  Integrity,         // broken cross-reference inside a loaded model
  Numeric,           // non-finite value or arithmetic overflow
  NoPath,            // no route between the requested endpoints
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::NoPath: return "no-path";
  }
  return "unknown";
}

}  // namespace csi

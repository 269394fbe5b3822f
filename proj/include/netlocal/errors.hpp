#pragma once

#include <stdexcept>
#include <string>

namespace netlocal {

/// Failure categories. The CLI maps Usage/Range/Kind/Unsupported to exit
/// code 2 and Dimension/Size/Numerical to exit code 3.
enum class ErrorKind {
  Usage,
  Range,
  Kind,
  Unsupported,
  Dimension,
  Size,
  Numerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Range: return "range";
    case ErrorKind::Kind: return "kind";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Size: return "size";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace netlocal

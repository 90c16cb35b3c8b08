#pragma once

#include <stdexcept>
#include <string>

namespace aoc {

enum class Errc {
  InvalidArgument = 1,
  UnreachableSuccess,
  SingularSystem,
  InsufficientData,
  Parse,
  Io,
};

/// Exception type thrown by every operation in the core library. The C API
/// maps `code()` onto its status enumeration.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace aoc

#pragma once

#include <stdexcept>
#include <string>

namespace pseudospec {

/// Failure categories surfaced by the library. The CLI maps them to exit codes.
enum class Errc {
  invalid_input,
  unsupported_degree,
  arithmetic_corruption,  // an internal consistency check failed; indicates a bug
  degenerate_code,
  resource_limit,
  numerical_failure,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pseudospec

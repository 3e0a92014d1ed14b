#include "pseudospec/error.hpp"

namespace pseudospec {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_input: return "invalid-input";
    case Errc::unsupported_degree: return "unsupported-degree";
    case Errc::arithmetic_corruption: return "arithmetic-corruption";
    case Errc::degenerate_code: return "degenerate-code";
    case Errc::resource_limit: return "resource-limit";
    case Errc::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

}  // namespace pseudospec

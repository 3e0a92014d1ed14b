#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace pseudospec::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kNumericalFailure = 3,
};

/// Every knob a subcommand can read. Serialised into each run's sidecar so the
/// run can be replayed with `--config`.
struct ExperimentConfig {
  std::string command;
  std::string kind = "pseudo-wigner";
  int m = 10;
  int delta = 15;
  int N = 44;
  int p = 0;  // 0 selects floor(gamma N)
  std::uint64_t count = 100;
  std::uint64_t seed = 1;
  double gamma = 0.625;
  double epsilon = 0.1;
  int s_max = 8;
  int r = 2;
  std::string mode = "exact";
  std::uint64_t budget = 1000000;
  std::int64_t target_k = -1;  // genpoly: report the delta reaching this dimension
  bool curves = false;
  bool resume = false;
  std::string out;
};

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Parses argv and runs one subcommand. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudospec::cli

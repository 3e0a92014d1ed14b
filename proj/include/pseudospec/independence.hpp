#pragma once

// Checks that every r coordinates of a uniformly drawn codeword are jointly
// uniform on {0,1}^r.

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "pseudospec/codes.hpp"

namespace pseudospec {

enum class IndependenceMode { exact, sampled };

/// How exact mode decides uniformity of a coordinate subset. `automatic`
/// histograms all codewords for k <= 12 and otherwise uses the rank of the
/// corresponding generator-matrix columns.
enum class ExactPath { automatic, histogram, rank };

inline constexpr std::uint32_t kExactMaxDimension = 20;
inline constexpr std::uint32_t kHistogramMaxDimension = 12;
inline constexpr std::uint32_t kSampledCodewords = 1u << 16;

struct IndependenceReport {
  int r_tested = 0;
  IndependenceMode mode = IndependenceMode::exact;
  std::uint64_t subsets_checked = 0;
  bool exhaustive = false;  // all C(n, r) subsets were tested
  double max_total_variation = 0.0;
  double threshold = 0.0;   // 0 in exact mode
  bool pass = false;
  std::optional<std::vector<std::uint32_t>> failing_subset;  // worst subset when failing
};

/// Worst total-variation distance from uniform over tested r-subsets of the
/// coordinates of `code` under its uniform codeword measure.
///
/// Exact mode (k <= 20) tests all C(n, r) subsets when that count is at most
/// `budget`, otherwise `budget` seeded random subsets, and passes iff every
/// tested subset is exactly uniform. Sampled mode draws `budget` subsets and
/// 2^16 codewords and flags TV above 4 * sqrt(2^r / 2^16); it is a smoke test.
IndependenceReport verify_r_independence(const CyclicCode& code, int r, IndependenceMode mode,
                                         std::uint64_t budget, std::uint64_t seed,
                                         ExactPath path = ExactPath::automatic);
inline IndependenceReport verify_r_independence(const DualCode& dual, int r, IndependenceMode mode,
                                                std::uint64_t budget, std::uint64_t seed,
                                                ExactPath path = ExactPath::automatic) {
  return verify_r_independence(dual.code(), r, mode, budget, seed, path);
}

nlohmann::json to_json(const IndependenceReport& report);

}  // namespace pseudospec

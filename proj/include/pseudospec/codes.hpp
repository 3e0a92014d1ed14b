#pragma once

// Binary cyclic codes: narrow-sense primitive BCH construction, duals,
// nonsystematic encoding, seeded codeword sampling and exhaustive minimum
// distance.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "pseudospec/gf2m.hpp"

namespace pseudospec {

/// A cyclic code of length n = 2^m - 1 given by its generator polynomial.
class CyclicCode {
 public:
  /// Validates that `generator` divides x^n + 1 and leaves k >= 1.
  CyclicCode(FieldParams field, BinaryPolynomial generator,
             std::optional<int> designed_distance = std::nullopt);

  const FieldParams& field() const noexcept { return field_; }
  int m() const noexcept { return field_.m(); }
  std::uint32_t n() const noexcept { return field_.n(); }
  std::uint32_t k() const noexcept { return k_; }
  const BinaryPolynomial& generator() const noexcept { return generator_; }
  std::optional<int> designed_distance() const noexcept { return designed_distance_; }

 private:
  FieldParams field_;
  BinaryPolynomial generator_;
  std::uint32_t k_;
  std::optional<int> designed_distance_;
};

/// Dual of a cyclic code, itself cyclic with generator h*(x), the reciprocal
/// of the check polynomial h(x) = (x^n + 1) / g(x).
class DualCode {
 public:
  const CyclicCode& base() const noexcept { return base_; }
  const CyclicCode& code() const noexcept { return code_; }
  const BinaryPolynomial& check_polynomial() const noexcept { return check_; }
  const BinaryPolynomial& generator() const noexcept { return code_.generator(); }
  std::uint32_t n() const noexcept { return code_.n(); }
  std::uint32_t k_dual() const noexcept { return code_.k(); }

 private:
  friend DualCode dual_code(const CyclicCode& code);
  DualCode(CyclicCode base, CyclicCode code, BinaryPolynomial check)
      : base_(std::move(base)), code_(std::move(code)), check_(std::move(check)) {}

  CyclicCode base_;
  CyclicCode code_;
  BinaryPolynomial check_;
};

/// A length-n word of a cyclic code, stored as its polynomial.
class Codeword {
 public:
  Codeword(std::uint32_t n, BinaryPolynomial poly);

  std::uint32_t size() const noexcept { return n_; }
  bool bit(std::uint32_t i) const noexcept { return poly_.coeff(static_cast<int>(i)); }
  const BinaryPolynomial& polynomial() const noexcept { return poly_; }
  int weight() const noexcept { return poly_.weight(); }

  friend bool operator==(const Codeword&, const Codeword&) = default;

 private:
  std::uint32_t n_;
  BinaryPolynomial poly_;
};

struct BchResult {
  CyclicCode code;
  int requested_delta;
  bool delta_promoted;  // even delta was rounded up to delta + 1
};

/// Narrow-sense primitive BCH code with roots alpha, ..., alpha^{delta-1}.
/// Even delta is promoted to delta + 1. delta > n is a degenerate-code error.
BchResult bch_generator(const FieldParams& field, int delta);

struct DeltaForDimension {
  int delta;
  std::uint32_t k;
};

/// Smallest odd designed distance whose BCH code has dimension <= target_k.
DeltaForDimension delta_for_dimension(const FieldParams& field, std::uint32_t target_k);

DualCode dual_code(const CyclicCode& code);

/// message(x) * g(x); the message must have exactly code.k() bits.
Codeword encode(const CyclicCode& code, std::span<const std::uint8_t> message);
Codeword encode(const CyclicCode& code, const BinaryPolynomial& message);
inline Codeword encode(const DualCode& dual, std::span<const std::uint8_t> message) {
  return encode(dual.code(), message);
}

/// Uniform k-bit message for sample `index` of the stream identified by `seed`.
/// Counter-based: depends only on (seed, index, k).
BinaryPolynomial sample_message(std::uint64_t seed, std::uint64_t index, std::uint32_t k);

/// Codewords for indices [first_index, first_index + count).
std::vector<Codeword> sample_codewords(const DualCode& dual, std::size_t count, std::uint64_t seed,
                                       std::uint64_t first_index = 0);

/// Rows x^i g(x), i = 0..k-1, of the cyclic generator matrix.
std::vector<BinaryPolynomial> generator_basis(const CyclicCode& code);

inline constexpr std::uint32_t kMinDistanceMaxDimension = 24;

/// Minimum Hamming weight over all nonzero codewords (Gray-code enumeration).
int min_distance_exact(const CyclicCode& code);
inline int min_distance_exact(const DualCode& dual) { return min_distance_exact(dual.code()); }

/// {m, n, delta, generator_hex, k, dual_generator_hex, k_dual}
nlohmann::json to_json(const DualCode& dual);

/// Packed codeword batch: 4-byte little-endian n, 4-byte little-endian count,
/// then each codeword in ceil(n/8) bytes, coefficient of x^0 in the least
/// significant bit of the first byte.
void write_codeword_batch(std::ostream& out, std::span<const Codeword> words);
std::vector<Codeword> read_codeword_batch(std::istream& in);

}  // namespace pseudospec

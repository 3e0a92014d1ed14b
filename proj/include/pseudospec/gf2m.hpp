#pragma once

// Polynomials over GF(2) and arithmetic in GF(2^m).
//
// Binary polynomials are bit-packed into 64-bit words, coefficient of x^i at
// bit (i % 64) of word (i / 64). The word vector never carries trailing zero
// words, so equality is plain vector equality.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pseudospec {

class BinaryPolynomial {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

  BinaryPolynomial() = default;

  /// Low 64 coefficients given as a bit mask (bit i = coefficient of x^i).
  static BinaryPolynomial from_mask(std::uint64_t mask);
  static BinaryPolynomial from_exponents(std::initializer_list<int> exponents);
  static BinaryPolynomial monomial(int degree);
  /// x^n + 1
  static BinaryPolynomial cyclic_modulus(int n);
  static BinaryPolynomial from_words(std::vector<std::uint64_t> words);
  /// Coefficients lowest degree first, each 0 or 1.
  static BinaryPolynomial from_bits(std::span<const std::uint8_t> bits);

  bool is_zero() const noexcept { return words_.empty(); }
  int degree() const noexcept;
  bool coeff(int i) const noexcept;
  void set_coeff(int i, bool value);
  int weight() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  BinaryPolynomial& operator^=(const BinaryPolynomial& rhs);
  /// Multiplication by x^k.
  BinaryPolynomial shifted(int k) const;
  /// x^deg * p(1/x), the coefficient-reversed polynomial.
  BinaryPolynomial reciprocal() const;

  friend BinaryPolynomial operator^(BinaryPolynomial lhs, const BinaryPolynomial& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  friend BinaryPolynomial operator+(BinaryPolynomial lhs, const BinaryPolynomial& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  friend BinaryPolynomial operator*(const BinaryPolynomial& lhs, const BinaryPolynomial& rhs);
  friend bool operator==(const BinaryPolynomial&, const BinaryPolynomial&) = default;

  /// Human-readable form, e.g. "x^4+x+1".
  std::string to_string() const;

  /// Hex serialization: byte j carries coefficients of x^{8j} .. x^{8j+7},
  /// least significant bit first; bytes are written in increasing j as two
  /// lowercase hex digits each. The zero polynomial serializes to "00".
  std::string to_hex() const;
  static BinaryPolynomial from_hex(const std::string& hex);

 private:
  void trim();

  std::vector<std::uint64_t> words_;
};

struct DivMod {
  BinaryPolynomial quotient;
  BinaryPolynomial remainder;
};

/// Long division over GF(2). Throws invalid_input on division by zero.
DivMod divmod(const BinaryPolynomial& dividend, const BinaryPolynomial& divisor);
BinaryPolynomial gcd(BinaryPolynomial a, BinaryPolynomial b);
/// (a * b) mod modulus.
BinaryPolynomial mulmod(const BinaryPolynomial& a, const BinaryPolynomial& b,
                        const BinaryPolynomial& modulus);

inline constexpr int kMinFieldDegree = 1;
inline constexpr int kMaxFieldDegree = 20;

/// Fixed table of primitive polynomials, one per supported degree.
///
///   m  polynomial                 m  polynomial
///   1  x+1                       11  x^11+x^2+1
///   2  x^2+x+1                   12  x^12+x^6+x^4+x+1
///   3  x^3+x+1                   13  x^13+x^4+x^3+x+1
///   4  x^4+x+1                   14  x^14+x^10+x^6+x+1
///   5  x^5+x^2+1                 15  x^15+x+1
///   6  x^6+x+1                   16  x^16+x^12+x^3+x+1
///   7  x^7+x^3+1                 17  x^17+x^3+1
///   8  x^8+x^4+x^3+x^2+1         18  x^18+x^7+1
///   9  x^9+x^4+1                 19  x^19+x^5+x^2+x+1
///  10  x^10+x^3+1                20  x^20+x^3+1
BinaryPolynomial default_primitive_poly(int m);

/// True if `poly` has degree m and x has multiplicative order 2^m - 1 modulo it.
bool is_primitive(const BinaryPolynomial& poly);

/// Element of GF(2^m) in polynomial basis.
struct FieldElement {
  std::uint32_t value = 0;

  friend FieldElement operator+(FieldElement a, FieldElement b) { return {a.value ^ b.value}; }
  friend bool operator==(FieldElement, FieldElement) = default;
};

/// GF(2^m) context. Immutable; copies share the log/antilog tables.
class FieldParams {
 public:
  explicit FieldParams(int m);
  FieldParams(int m, const BinaryPolynomial& modulus);

  int m() const noexcept { return m_; }
  std::uint32_t n() const noexcept { return n_; }
  const BinaryPolynomial& modulus() const noexcept { return modulus_; }
  std::uint32_t modulus_mask() const noexcept { return mask_; }

  /// alpha^e for any integer e (reduced mod n).
  FieldElement alpha_pow(std::int64_t e) const noexcept;
  /// Discrete log base alpha; `a` must be nonzero.
  std::uint32_t log(FieldElement a) const;

  bool contains(FieldElement a) const noexcept { return (a.value >> m_) == 0; }

 private:
  int m_;
  std::uint32_t n_;
  std::uint32_t mask_;
  BinaryPolynomial modulus_;
  std::shared_ptr<const std::vector<std::uint32_t>> exp_;
  std::shared_ptr<const std::vector<std::uint32_t>> log_;
};

/// Carry-less multiply followed by reduction modulo the field polynomial.
FieldElement field_mul(FieldElement a, FieldElement b, const FieldParams& params);
FieldElement field_pow(FieldElement a, std::uint64_t e, const FieldParams& params);
FieldElement field_inv(FieldElement a, const FieldParams& params);

/// Evaluates a binary polynomial at a field element by Horner's rule.
FieldElement evaluate(const BinaryPolynomial& poly, FieldElement x, const FieldParams& params);

/// {e * 2^j mod n : j >= 0}, sorted ascending.
std::vector<std::uint32_t> cyclotomic_coset(std::uint32_t e, std::uint32_t n);
/// Partition of {0, ..., n-1} into cyclotomic cosets, ordered by smallest member.
std::vector<std::vector<std::uint32_t>> cyclotomic_cosets(std::uint32_t n);

/// Minimal polynomial of alpha^e over GF(2).
BinaryPolynomial minimal_polynomial(std::uint32_t e, const FieldParams& params);

}  // namespace pseudospec

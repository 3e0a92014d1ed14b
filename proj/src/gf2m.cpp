#include "pseudospec/gf2m.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>

#include "pseudospec/error.hpp"

namespace pseudospec {

namespace {

constexpr int kWordBits = 64;

int words_for_degree(int degree) { return degree / kWordBits + 1; }

// dst ^= src * x^shift; dst must already be wide enough.
void xor_shifted(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src, int shift) {
  const std::size_t word = static_cast<std::size_t>(shift / kWordBits);
  const int bit = shift % kWordBits;
  if (bit == 0) {
    for (std::size_t j = 0; j < src.size(); ++j) dst[j + word] ^= src[j];
    return;
  }
  for (std::size_t j = 0; j < src.size(); ++j) {
    dst[j + word] ^= src[j] << bit;
    const std::uint64_t carry = src[j] >> (kWordBits - bit);
    if (carry != 0) dst[j + word + 1] ^= carry;
  }
}

int degree_of(std::span<const std::uint64_t> words) {
  for (std::size_t j = words.size(); j-- > 0;) {
    if (words[j] != 0) {
      return static_cast<int>(j) * kWordBits + (kWordBits - 1 - std::countl_zero(words[j]));
    }
  }
  return BinaryPolynomial::kMinusInfinity;
}

constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kPrimitiveTable = {
    0,         // unused
    0x3,       // x+1
    0x7,       // x^2+x+1
    0xb,       // x^3+x+1
    0x13,      // x^4+x+1
    0x25,      // x^5+x^2+1
    0x43,      // x^6+x+1
    0x89,      // x^7+x^3+1
    0x11d,     // x^8+x^4+x^3+x^2+1
    0x211,     // x^9+x^4+1
    0x409,     // x^10+x^3+1
    0x805,     // x^11+x^2+1
    0x1053,    // x^12+x^6+x^4+x+1
    0x201b,    // x^13+x^4+x^3+x+1
    0x4443,    // x^14+x^10+x^6+x+1
    0x8003,    // x^15+x+1
    0x1100b,   // x^16+x^12+x^3+x+1
    0x20009,   // x^17+x^3+1
    0x40081,   // x^18+x^7+1
    0x80027,   // x^19+x^5+x^2+x+1
    0x100009,  // x^20+x^3+1
};

// Product of two reduced elements, reduced modulo `mask` of degree m.
std::uint32_t clmul_reduce(std::uint32_t a, std::uint32_t b, std::uint32_t mask, int m) {
  std::uint64_t product = 0;
  std::uint64_t wide = a;
  while (b != 0) {
    if (b & 1u) product ^= wide;
    wide <<= 1;
    b >>= 1;
  }
  for (int i = 2 * m - 2; i >= m; --i) {
    if ((product >> i) & 1u) product ^= static_cast<std::uint64_t>(mask) << (i - m);
  }
  return static_cast<std::uint32_t>(product);
}

std::uint32_t pow_reduce(std::uint32_t base, std::uint64_t e, std::uint32_t mask, int m) {
  std::uint32_t result = 1;
  while (e != 0) {
    if (e & 1u) result = clmul_reduce(result, base, mask, m);
    base = clmul_reduce(base, base, mask, m);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// BinaryPolynomial

BinaryPolynomial BinaryPolynomial::from_mask(std::uint64_t mask) {
  BinaryPolynomial p;
  if (mask != 0) p.words_.push_back(mask);
  return p;
}

BinaryPolynomial BinaryPolynomial::from_exponents(std::initializer_list<int> exponents) {
  BinaryPolynomial p;
  for (int e : exponents) p.set_coeff(e, !p.coeff(e));
  return p;
}

BinaryPolynomial BinaryPolynomial::monomial(int degree) {
  BinaryPolynomial p;
  p.set_coeff(degree, true);
  return p;
}

BinaryPolynomial BinaryPolynomial::cyclic_modulus(int n) {
  if (n <= 0) fail(Errc::invalid_input, "cyclic modulus needs n >= 1");
  BinaryPolynomial p = monomial(n);
  p.set_coeff(0, true);
  return p;
}

BinaryPolynomial BinaryPolynomial::from_words(std::vector<std::uint64_t> words) {
  BinaryPolynomial p;
  p.words_ = std::move(words);
  p.trim();
  return p;
}

BinaryPolynomial BinaryPolynomial::from_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint64_t> words((bits.size() + kWordBits - 1) / kWordBits, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) fail(Errc::invalid_input, "polynomial coefficient must be 0 or 1");
    if (bits[i]) words[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  }
  return from_words(std::move(words));
}

int BinaryPolynomial::degree() const noexcept { return degree_of(words_); }

bool BinaryPolynomial::coeff(int i) const noexcept {
  if (i < 0) return false;
  const auto word = static_cast<std::size_t>(i / kWordBits);
  if (word >= words_.size()) return false;
  return (words_[word] >> (i % kWordBits)) & 1u;
}

void BinaryPolynomial::set_coeff(int i, bool value) {
  if (i < 0) fail(Errc::invalid_input, "negative polynomial exponent");
  const auto word = static_cast<std::size_t>(i / kWordBits);
  const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    if (word >= words_.size()) words_.resize(word + 1, 0);
    words_[word] |= bit;
  } else if (word < words_.size()) {
    words_[word] &= ~bit;
    trim();
  }
}

int BinaryPolynomial::weight() const noexcept {
  int w = 0;
  for (auto word : words_) w += std::popcount(word);
  return w;
}

BinaryPolynomial& BinaryPolynomial::operator^=(const BinaryPolynomial& rhs) {
  if (rhs.words_.size() > words_.size()) words_.resize(rhs.words_.size(), 0);
  for (std::size_t j = 0; j < rhs.words_.size(); ++j) words_[j] ^= rhs.words_[j];
  trim();
  return *this;
}

BinaryPolynomial BinaryPolynomial::shifted(int k) const {
  if (k < 0) fail(Errc::invalid_input, "negative shift");
  if (is_zero()) return {};
  std::vector<std::uint64_t> out(static_cast<std::size_t>(words_for_degree(degree() + k)), 0);
  xor_shifted(out, words_, k);
  return from_words(std::move(out));
}

BinaryPolynomial BinaryPolynomial::reciprocal() const {
  const int d = degree();
  if (d < 0) return {};
  BinaryPolynomial out;
  out.words_.assign(static_cast<std::size_t>(words_for_degree(d)), 0);
  for (int i = 0; i <= d; ++i) {
    if (coeff(i)) out.words_[static_cast<std::size_t>((d - i) / kWordBits)] |= std::uint64_t{1} << ((d - i) % kWordBits);
  }
  out.trim();
  return out;
}

BinaryPolynomial operator*(const BinaryPolynomial& lhs, const BinaryPolynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  // Walk the set bits of the sparser operand, shifting-and-xoring the other.
  const bool lhs_sparse = lhs.weight() <= rhs.weight();
  const BinaryPolynomial& bits = lhs_sparse ? lhs : rhs;
  const BinaryPolynomial& other = lhs_sparse ? rhs : lhs;
  std::vector<std::uint64_t> out(static_cast<std::size_t>(words_for_degree(lhs.degree() + rhs.degree())), 0);
  for (std::size_t j = 0; j < bits.words_.size(); ++j) {
    std::uint64_t w = bits.words_[j];
    while (w != 0) {
      const int b = std::countr_zero(w);
      xor_shifted(out, other.words_, static_cast<int>(j) * kWordBits + b);
      w &= w - 1;
    }
  }
  return BinaryPolynomial::from_words(std::move(out));
}

std::string BinaryPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(i)) continue;
    if (!out.empty()) out += '+';
    if (i == 0) out += '1';
    else if (i == 1) out += 'x';
    else out += "x^" + std::to_string(i);
  }
  return out;
}

std::string BinaryPolynomial::to_hex() const {
  if (is_zero()) return "00";
  const int bytes = degree() / 8 + 1;
  std::string out;
  out.reserve(static_cast<std::size_t>(bytes) * 2);
  char buf[3];
  for (int j = 0; j < bytes; ++j) {
    const auto byte = static_cast<unsigned>((words_[static_cast<std::size_t>(j / 8)] >> ((j % 8) * 8)) & 0xffu);
    std::snprintf(buf, sizeof buf, "%02x", byte);
    out += buf;
  }
  return out;
}

BinaryPolynomial BinaryPolynomial::from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) fail(Errc::invalid_input, "hex polynomial must have an even number of digits");
  auto nibble = [](char c) -> std::uint64_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint64_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint64_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint64_t>(c - 'A' + 10);
    fail(Errc::invalid_input, std::string("invalid hex digit '") + c + "'");
  };
  const std::size_t bytes = hex.size() / 2;
  std::vector<std::uint64_t> words((bytes + 7) / 8, 0);
  for (std::size_t j = 0; j < bytes; ++j) {
    const std::uint64_t byte = (nibble(hex[2 * j]) << 4) | nibble(hex[2 * j + 1]);
    words[j / 8] |= byte << ((j % 8) * 8);
  }
  return from_words(std::move(words));
}

void BinaryPolynomial::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

DivMod divmod(const BinaryPolynomial& dividend, const BinaryPolynomial& divisor) {
  if (divisor.is_zero()) fail(Errc::invalid_input, "polynomial division by zero");
  const int dd = divisor.degree();
  const int dn = dividend.degree();
  if (dn < dd) return {BinaryPolynomial{}, dividend};

  std::vector<std::uint64_t> rem(dividend.words().begin(), dividend.words().end());
  std::vector<std::uint64_t> quot(static_cast<std::size_t>(words_for_degree(dn - dd)), 0);
  for (int i = dn; i >= dd; --i) {
    if (!((rem[static_cast<std::size_t>(i / kWordBits)] >> (i % kWordBits)) & 1u)) continue;
    xor_shifted(rem, divisor.words(), i - dd);
    quot[static_cast<std::size_t>((i - dd) / kWordBits)] |= std::uint64_t{1} << ((i - dd) % kWordBits);
  }
  return {BinaryPolynomial::from_words(std::move(quot)), BinaryPolynomial::from_words(std::move(rem))};
}

BinaryPolynomial gcd(BinaryPolynomial a, BinaryPolynomial b) {
  while (!b.is_zero()) {
    BinaryPolynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BinaryPolynomial mulmod(const BinaryPolynomial& a, const BinaryPolynomial& b,
                        const BinaryPolynomial& modulus) {
  return divmod(a * b, modulus).remainder;
}

// ---------------------------------------------------------------------------
// Primitive polynomials

BinaryPolynomial default_primitive_poly(int m) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree) {
    fail(Errc::unsupported_degree, "field degree m=" + std::to_string(m) + " outside supported range [1, 20]");
  }
  return BinaryPolynomial::from_mask(kPrimitiveTable[static_cast<std::size_t>(m)]);
}

bool is_primitive(const BinaryPolynomial& poly) {
  const int m = poly.degree();
  if (m < kMinFieldDegree || m > kMaxFieldDegree || !poly.coeff(0)) return false;
  const auto mask = static_cast<std::uint32_t>(poly.words()[0]);
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  // x reduced modulo poly; for m = 1 this is the constant 1.
  const std::uint32_t x = m == 1 ? 1u : 2u;
  if (pow_reduce(x, n, mask, m) != 1u) return false;
  for (auto q : prime_factors(n)) {
    if (pow_reduce(x, n / q, mask, m) == 1u) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldParams

FieldParams::FieldParams(int m) : FieldParams(m, default_primitive_poly(m)) {}

FieldParams::FieldParams(int m, const BinaryPolynomial& modulus) : m_(m), modulus_(modulus) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree) {
    fail(Errc::unsupported_degree, "field degree m=" + std::to_string(m) + " outside supported range [1, 20]");
  }
  if (modulus.degree() != m) fail(Errc::invalid_input, "field modulus degree does not match m");
  if (!is_primitive(modulus)) fail(Errc::invalid_input, "field modulus " + modulus.to_string() + " is not primitive");

  n_ = (std::uint32_t{1} << m) - 1;
  mask_ = static_cast<std::uint32_t>(modulus.words()[0]);

  auto exp = std::make_shared<std::vector<std::uint32_t>>(n_);
  auto log = std::make_shared<std::vector<std::uint32_t>>(std::size_t{n_} + 1, 0);
  std::uint32_t v = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    (*exp)[i] = v;
    (*log)[v] = i;
    v <<= 1;
    if ((v >> m) & 1u) v ^= mask_;
  }
  if (v != 1u) fail(Errc::arithmetic_corruption, "alpha does not cycle with period n");
  exp_ = std::move(exp);
  log_ = std::move(log);
}

FieldElement FieldParams::alpha_pow(std::int64_t e) const noexcept {
  const auto n = static_cast<std::int64_t>(n_);
  const auto idx = ((e % n) + n) % n;
  return {(*exp_)[static_cast<std::size_t>(idx)]};
}

std::uint32_t FieldParams::log(FieldElement a) const {
  if (a.value == 0 || !contains(a)) fail(Errc::invalid_input, "log of zero or out-of-field element");
  return (*log_)[a.value];
}

FieldElement field_mul(FieldElement a, FieldElement b, const FieldParams& params) {
  if (!params.contains(a) || !params.contains(b)) {
    fail(Errc::invalid_input, "field element wider than m bits");
  }
  return {clmul_reduce(a.value, b.value, params.modulus_mask(), params.m())};
}

FieldElement field_pow(FieldElement a, std::uint64_t e, const FieldParams& params) {
  if (!params.contains(a)) fail(Errc::invalid_input, "field element wider than m bits");
  return {pow_reduce(a.value, e, params.modulus_mask(), params.m())};
}

FieldElement field_inv(FieldElement a, const FieldParams& params) {
  if (a.value == 0) fail(Errc::invalid_input, "zero has no inverse");
  return field_pow(a, params.n() - 1, params);
}

FieldElement evaluate(const BinaryPolynomial& poly, FieldElement x, const FieldParams& params) {
  FieldElement acc{0};
  for (int i = poly.degree(); i >= 0; --i) {
    acc = field_mul(acc, x, params);
    if (poly.coeff(i)) acc.value ^= 1u;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Cyclotomic cosets and minimal polynomials

std::vector<std::uint32_t> cyclotomic_coset(std::uint32_t e, std::uint32_t n) {
  if (n == 0 || n % 2 == 0) fail(Errc::invalid_input, "cyclotomic cosets need odd n");
  if (e >= n) fail(Errc::invalid_input, "coset representative must be below n");
  std::vector<std::uint32_t> coset;
  std::uint64_t c = e;
  do {
    coset.push_back(static_cast<std::uint32_t>(c));
    c = (2 * c) % n;
  } while (c != e);
  std::sort(coset.begin(), coset.end());
  return coset;
}

std::vector<std::vector<std::uint32_t>> cyclotomic_cosets(std::uint32_t n) {
  if (n == 0 || n % 2 == 0) fail(Errc::invalid_input, "cyclotomic cosets need odd n");
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t e = 0; e < n; ++e) {
    if (seen[e]) continue;
    auto coset = cyclotomic_coset(e, n);
    for (auto c : coset) seen[c] = true;
    out.push_back(std::move(coset));
  }
  return out;
}

BinaryPolynomial minimal_polynomial(std::uint32_t e, const FieldParams& params) {
  const auto coset = cyclotomic_coset(e, params.n());
  // Coefficients in GF(2^m), lowest degree first.
  std::vector<FieldElement> coeffs{FieldElement{1}};
  for (auto j : coset) {
    const FieldElement root = params.alpha_pow(j);
    std::vector<FieldElement> next(coeffs.size() + 1, FieldElement{0});
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] = next[i + 1] + coeffs[i];
      next[i] = next[i] + field_mul(root, coeffs[i], params);
    }
    coeffs = std::move(next);
  }
  BinaryPolynomial out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].value > 1u) {
      fail(Errc::arithmetic_corruption,
           "minimal polynomial of alpha^" + std::to_string(e) + " has a non-binary coefficient");
    }
    if (coeffs[i].value == 1u) out.set_coeff(static_cast<int>(i), true);
  }
  if (out.degree() != static_cast<int>(coset.size())) {
    fail(Errc::arithmetic_corruption, "minimal polynomial degree differs from coset size");
  }
  return out;
}

}  // namespace pseudospec

#include <doctest.h>

#include <set>
#include <sstream>

#include "pseudospec/codes.hpp"
#include "pseudospec/error.hpp"

using namespace pseudospec;

namespace {

CyclicCode hamming74() { return CyclicCode(FieldParams(3), BinaryPolynomial::from_exponents({3, 1, 0}), 3); }

std::vector<std::uint8_t> message_bits(std::uint64_t value, std::uint32_t k) {
  std::vector<std::uint8_t> bits(k);
  for (std::uint32_t i = 0; i < k; ++i) bits[i] = (value >> i) & 1u;
  return bits;
}

// Mod-2 inner product of two codewords.
int overlap(const Codeword& a, const Codeword& b) {
  int acc = 0;
  for (std::uint32_t i = 0; i < a.size(); ++i) acc ^= (a.bit(i) && b.bit(i)) ? 1 : 0;
  return acc;
}

std::vector<Codeword> all_codewords(const CyclicCode& code) {
  std::vector<Codeword> out;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << code.k()); ++u) out.push_back(encode(code, message_bits(u, code.k())));
  return out;
}

}  // namespace

TEST_CASE("bch_generator small codes") {
  const FieldParams f4(4);
  {
    const auto bch = bch_generator(f4, 5);
    CHECK(bch.code.generator() == BinaryPolynomial::from_exponents({8, 7, 6, 4, 0}));
    // Product of the two minimal polynomials, by multiplication.
    CHECK(bch.code.generator() == BinaryPolynomial::from_exponents({4, 1, 0}) * BinaryPolynomial::from_exponents({4, 3, 2, 1, 0}));
    CHECK(bch.code.k() == 7);
    CHECK(min_distance_exact(bch.code) == 5);
  }
  {
    const auto bch = bch_generator(f4, 3);
    CHECK(bch.code.generator() == BinaryPolynomial::from_exponents({4, 1, 0}));
    CHECK(bch.code.k() == 11);
    CHECK(min_distance_exact(bch.code) == 3);
  }
  // Even delta is promoted.
  {
    const auto bch = bch_generator(f4, 4);
    CHECK(bch.delta_promoted);
    CHECK(bch.requested_delta == 4);
    CHECK(bch.code.designed_distance() == 5);
    CHECK(bch.code.k() == 7);
  }
  try {
    bch_generator(f4, 31);
    FAIL("expected degenerate-code");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_code);
  }
  CHECK_THROWS_AS(bch_generator(f4, 2), Error);
}

TEST_CASE("bch_generator at m = 14") {
  const FieldParams f(14);
  const auto d15 = bch_generator(f, 15);
  CHECK(d15.code.k() == 16383 - 98);
  const auto d31 = bch_generator(f, 31);
  CHECK(d31.code.generator().degree() == 210);
  CHECK(d31.code.k() == 16173);
  const auto found = delta_for_dimension(f, 16173);
  CHECK(found.delta == 31);
  CHECK(found.k == 16173);
}

TEST_CASE("BCH dimension bound and distance lower bound") {
  for (int m = 3; m <= 6; ++m) {
    const FieldParams f(m);
    for (int delta = 3; delta <= static_cast<int>(f.n()); delta += 2) {
      const auto bch = bch_generator(f, delta);
      const auto t = static_cast<std::uint32_t>((delta - 1) / 2);
      if (static_cast<std::uint32_t>(m) * t < f.n()) CHECK(bch.code.k() >= f.n() - static_cast<std::uint32_t>(m) * t);
      if (bch.code.k() <= 16) CHECK(min_distance_exact(bch.code) >= delta);
    }
  }
}

TEST_CASE("dual of Hamming(7,4) is the simplex code") {
  const auto ham = hamming74();
  const auto dual = dual_code(ham);
  CHECK(dual.check_polynomial() == BinaryPolynomial::from_exponents({4, 2, 1, 0}));
  CHECK(dual.k_dual() == 3);
  CHECK(min_distance_exact(ham) == 3);
  CHECK(min_distance_exact(dual) == 4);

  const auto words = all_codewords(dual.code());
  std::set<std::string> distinct;
  for (const auto& w : words) {
    distinct.insert(w.polynomial().to_hex());
    if (w.weight() != 0) CHECK(w.weight() == 4);
    for (const auto& b : all_codewords(ham)) CHECK(overlap(w, b) == 0);
  }
  CHECK(distinct.size() == 8);
}

TEST_CASE("dual dimensions and degenerate duals") {
  const auto bch = bch_generator(FieldParams(4), 5);
  CHECK(dual_code(bch.code).k_dual() == 8);
  // g = 1 generates the full space, whose dual is {0}.
  try {
    dual_code(CyclicCode(FieldParams(4), BinaryPolynomial::from_mask(1)));
    FAIL("expected degenerate-code");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_code);
  }
  CHECK_THROWS_AS(CyclicCode(FieldParams(4), BinaryPolynomial::from_exponents({3, 1, 0})), Error);
}

TEST_CASE("encode") {
  const auto dual = dual_code(bch_generator(FieldParams(4), 5).code);
  const auto k = dual.k_dual();
  CHECK(encode(dual, message_bits(0, k)).weight() == 0);
  CHECK(encode(dual, message_bits(1, k)).polynomial() == dual.generator());
  CHECK(encode(dual, message_bits(1, k)).size() == 15);
  CHECK_THROWS_AS(encode(dual, message_bits(0, k + 1)), Error);

  // Linearity and injectivity over all messages.
  std::set<std::string> distinct;
  for (std::uint64_t u = 0; u < (1u << k); ++u) {
    const auto w = encode(dual, message_bits(u, k));
    distinct.insert(w.polynomial().to_hex());
    CHECK(divmod(w.polynomial(), dual.generator()).remainder.is_zero());
    const std::uint64_t v = (u * 37 + 11) % (1u << k);
    const auto sum = encode(dual, message_bits(u ^ v, k));
    CHECK(sum.polynomial() == (w.polynomial() ^ encode(dual, message_bits(v, k)).polynomial()));
  }
  CHECK(distinct.size() == (1u << k));
}

TEST_CASE("sampled dual codewords are valid, orthogonal and reproducible") {
  const auto bch = bch_generator(FieldParams(4), 5);
  const auto dual = dual_code(bch.code);
  const auto a = sample_codewords(dual, 3, 42);
  const auto b = sample_codewords(dual, 3, 42);
  CHECK(a == b);
  REQUIRE(a.size() == 3);
  for (const auto& w : a) CHECK(divmod(w.polynomial(), dual.generator()).remainder.is_zero());

  const auto big = sample_codewords(dual, 64, 9);
  const auto basis = generator_basis(bch.code);
  for (const auto& w : big) {
    for (const auto& row : basis) CHECK(overlap(w, Codeword(15, row)) == 0);
  }
  // Prefix / offset consistency of the counter-based stream.
  const auto tail = sample_codewords(dual, 10, 9, 54);
  for (std::size_t i = 0; i < 10; ++i) CHECK(tail[i] == big[54 + i]);
  CHECK(sample_codewords(dual, 3, 43) != a);
  CHECK_THROWS_AS(sample_codewords(dual, 0, 1), Error);
}

TEST_CASE("sample_codewords on the m = 14 dual") {
  const auto dual = dual_code(bch_generator(FieldParams(14), 15).code);
  const auto words = sample_codewords(dual, 20, 1);
  for (const auto& w : words) {
    CHECK(w.size() == 16383);
    CHECK(divmod(w.polynomial(), dual.generator()).remainder.is_zero());
  }
}

TEST_CASE("message sampling covers the dual uniformly at the source") {
  // Over all messages each dual codeword appears exactly once.
  const auto dual = dual_code(bch_generator(FieldParams(4), 5).code);
  std::set<std::string> seen;
  for (std::uint64_t u = 0; u < 256; ++u) seen.insert(encode(dual, message_bits(u, 8)).polynomial().to_hex());
  CHECK(seen.size() == 256);
  // Sampled messages have exactly k_dual random bits.
  for (std::uint64_t i = 0; i < 100; ++i) CHECK(sample_message(5, i, 8).degree() < 8);
}

TEST_CASE("min_distance_exact refuses large dimensions") {
  const auto bch = bch_generator(FieldParams(6), 3);
  try {
    min_distance_exact(bch.code);
    FAIL("expected resource-limit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::resource_limit);
  }
}

TEST_CASE("code JSON and codeword batch format") {
  const auto dual = dual_code(bch_generator(FieldParams(4), 5).code);
  const auto j = to_json(dual);
  CHECK(j["m"] == 4);
  CHECK(j["n"] == 15);
  CHECK(j["delta"] == 5);
  CHECK(j["k"] == 7);
  CHECK(j["k_dual"] == 8);
  CHECK(BinaryPolynomial::from_hex(j["generator_hex"].get<std::string>()) == dual.base().generator());
  CHECK(BinaryPolynomial::from_hex(j["dual_generator_hex"].get<std::string>()) == dual.generator());

  const auto words = sample_codewords(dual, 5, 3);
  std::stringstream buf;
  write_codeword_batch(buf, words);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 8 + 5 * 2);
  CHECK(bytes[0] == 15);
  CHECK(bytes[4] == 5);
  // First codeword, coefficient of x^0 in bit 0 of the first payload byte.
  CHECK(((static_cast<unsigned char>(bytes[8]) & 1u) != 0) == words[0].bit(0));
  CHECK(read_codeword_batch(buf) == words);
}

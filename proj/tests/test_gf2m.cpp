#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pseudospec/error.hpp"
#include "pseudospec/gf2m.hpp"

using namespace pseudospec;

namespace {

std::vector<int> bits_of(const BinaryPolynomial& p) {
  std::vector<int> out;
  for (int i = 0; i <= p.degree(); ++i) out.push_back(p.coeff(i) ? 1 : 0);
  return out;
}

BinaryPolynomial random_poly(std::mt19937_64& gen, int max_degree) {
  BinaryPolynomial p;
  const int deg = static_cast<int>(gen() % static_cast<std::uint64_t>(max_degree + 1));
  for (int i = 0; i <= deg; ++i) p.set_coeff(i, gen() & 1u);
  return p;
}

}  // namespace

TEST_CASE("binary polynomial basics") {
  CHECK(BinaryPolynomial{}.degree() == BinaryPolynomial::kMinusInfinity);
  CHECK(BinaryPolynomial{}.is_zero());
  const auto p = BinaryPolynomial::from_exponents({4, 1, 0});
  CHECK(p.degree() == 4);
  CHECK(p.to_string() == "x^4+x+1");
  CHECK(p.reciprocal() == BinaryPolynomial::from_exponents({4, 3, 0}));
  CHECK(BinaryPolynomial::from_mask(0x13) == p);
  CHECK(p.weight() == 3);

  auto q = p;
  q.set_coeff(4, false);
  CHECK(q.degree() == 1);
  CHECK(BinaryPolynomial::monomial(130).degree() == 130);
}

TEST_CASE("polynomial multiplication and division agree with schoolbook oracle") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(gen, 300);
    const auto b = random_poly(gen, 150);
    const auto prod = a * b;
    CHECK(bits_of(prod) == oracle::poly_mul(bits_of(a), bits_of(b)));
    if (!b.is_zero()) {
      const auto [q, r] = divmod(a, b);
      CHECK(r.degree() < b.degree());
      CHECK((q * b + r) == a);
    }
  }
  CHECK_THROWS_AS(divmod(BinaryPolynomial::from_mask(3), BinaryPolynomial{}), Error);
}

TEST_CASE("hex serialization is lowest-degree-first bytes") {
  CHECK(BinaryPolynomial{}.to_hex() == "00");
  CHECK(BinaryPolynomial::from_exponents({8, 7, 6, 4, 0}).to_hex() == "d101");
  CHECK(BinaryPolynomial::from_hex("d101") == BinaryPolynomial::from_exponents({8, 7, 6, 4, 0}));
  CHECK_THROWS_AS(BinaryPolynomial::from_hex("abc"), Error);
  CHECK_THROWS_AS(BinaryPolynomial::from_hex("zz"), Error);

  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_poly(gen, 500);
    CHECK(BinaryPolynomial::from_hex(p.to_hex()) == p);
  }
}

TEST_CASE("field_mul in GF(2^4)") {
  const FieldParams f(4);
  const oracle::LogTables tables(4, 0x13);
  // alpha^3 * alpha = alpha^4 = alpha + 1
  CHECK(field_mul({0b1000}, {0b0010}, f) == FieldElement{0b0011});
  CHECK(tables.mul(0b1000, 0b0010) == 0b0011u);
  for (std::uint32_t a = 0; a < 16; ++a) {
    CHECK(field_mul({a}, {1}, f) == FieldElement{a});
    CHECK(field_mul({a}, {0}, f) == FieldElement{0});
    for (std::uint32_t b = 0; b < 16; ++b) CHECK(field_mul({a}, {b}, f).value == tables.mul(a, b));
  }
  CHECK_THROWS_AS(field_mul({0b10000}, {1}, f), Error);
}

TEST_CASE("field_mul matches log tables for every supported degree") {
  std::mt19937_64 gen(3);
  for (int m = 1; m <= kMaxFieldDegree; ++m) {
    const FieldParams f(m);
    const oracle::LogTables tables(m, static_cast<std::uint32_t>(f.modulus().words()[0]));
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = static_cast<std::uint32_t>(gen() & f.n());
      const auto b = static_cast<std::uint32_t>(gen() & f.n());
      CHECK(field_mul({a}, {b}, f).value == tables.mul(a, b));
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 gen(5);
  for (int m : {3, 8, 14, 20}) {
    const FieldParams f(m);
    for (int trial = 0; trial < 300; ++trial) {
      const FieldElement a{static_cast<std::uint32_t>(gen() & f.n())};
      const FieldElement b{static_cast<std::uint32_t>(gen() & f.n())};
      const FieldElement c{static_cast<std::uint32_t>(gen() & f.n())};
      CHECK(field_mul(a, b + c, f) == field_mul(a, b, f) + field_mul(a, c, f));
      CHECK(field_mul(field_mul(a, b, f), c, f) == field_mul(a, field_mul(b, c, f), f));
      CHECK(field_mul(a, b, f) == field_mul(b, a, f));
      if (a.value != 0) {
        // a * a^{2^m - 2} = 1
        CHECK(field_mul(a, field_pow(a, (std::uint64_t{1} << m) - 2, f), f) == FieldElement{1});
        CHECK(field_mul(a, field_inv(a, f), f) == FieldElement{1});
      }
    }
  }
}

TEST_CASE("default primitive polynomials") {
  CHECK(default_primitive_poly(4) == BinaryPolynomial::from_exponents({4, 1, 0}));
  CHECK(default_primitive_poly(1) == BinaryPolynomial::from_exponents({1, 0}));
  CHECK(default_primitive_poly(14) == BinaryPolynomial::from_exponents({14, 10, 6, 1, 0}));
  CHECK(default_primitive_poly(4) == default_primitive_poly(4));

  try {
    default_primitive_poly(21);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_degree);
  }
  CHECK_THROWS_AS(default_primitive_poly(0), Error);
  CHECK_THROWS_AS(FieldParams(4, BinaryPolynomial::from_exponents({4, 3, 2, 1, 0})), Error);  // irreducible, order 5

  // m = 14 by hand: 2^14 - 1 = 3 * 43 * 127, so ord(x) = n iff x^n = 1 and
  // x^{n/3}, x^{n/43}, x^{n/127} != 1.
  {
    const auto p = default_primitive_poly(14);
    const FieldParams f(14);
    const FieldElement x{2};
    CHECK(field_pow(x, 16383, f) == FieldElement{1});
    for (std::uint64_t q : {3u, 43u, 127u}) CHECK(field_pow(x, 16383 / q, f) != FieldElement{1});
    CHECK(is_primitive(p));
  }

  // Brute-force order of x for every table entry up to m = 16.
  for (int m = 2; m <= 16; ++m) {
    const auto p = default_primitive_poly(m);
    CHECK(oracle::order_of_x(static_cast<std::uint32_t>(p.words()[0]), m) == (std::uint64_t{1} << m) - 1);
  }
  for (int m = 1; m <= kMaxFieldDegree; ++m) CHECK(is_primitive(default_primitive_poly(m)));
}

TEST_CASE("primitive polynomial divides x^n + 1 and no smaller x^k + 1") {
  for (int m = 2; m <= 10; ++m) {
    const auto p = default_primitive_poly(m);
    const int n = (1 << m) - 1;
    CHECK(divmod(BinaryPolynomial::cyclic_modulus(n), p).remainder.is_zero());
    for (int k = 1; k < n; ++k) CHECK_FALSE(divmod(BinaryPolynomial::cyclic_modulus(k), p).remainder.is_zero());
  }
}

TEST_CASE("cyclotomic cosets") {
  CHECK(cyclotomic_coset(1, 15) == std::vector<std::uint32_t>{1, 2, 4, 8});
  CHECK(cyclotomic_coset(5, 15) == std::vector<std::uint32_t>{5, 10});
  CHECK(cyclotomic_coset(0, 15) == std::vector<std::uint32_t>{0});
  CHECK_THROWS_AS(cyclotomic_coset(15, 15), Error);
  CHECK_THROWS_AS(cyclotomic_coset(1, 16), Error);

  for (std::uint32_t n : {7u, 15u, 63u, 1023u, 16383u}) {
    const auto cosets = cyclotomic_cosets(n);
    std::size_t total = 0;
    std::set<std::uint32_t> seen;
    for (const auto& c : cosets) {
      total += c.size();
      seen.insert(c.begin(), c.end());
    }
    CHECK(total == n);
    CHECK(seen.size() == n);
  }
}

TEST_CASE("minimal polynomials") {
  const FieldParams f(4);
  CHECK(minimal_polynomial(1, f) == BinaryPolynomial::from_exponents({4, 1, 0}));
  CHECK(minimal_polynomial(0, f) == BinaryPolynomial::from_exponents({1, 0}));

  // (x - a^5)(x - a^10) expanded with the oracle tables.
  const oracle::LogTables t(4, 0x13);
  const std::uint32_t r5 = t.exp[5], r10 = t.exp[10];
  CHECK((r5 ^ r10) == 1u);          // x coefficient
  CHECK(t.mul(r5, r10) == 1u);      // constant term
  CHECK(minimal_polynomial(5, f) == BinaryPolynomial::from_exponents({2, 1, 0}));

  for (int m : {4, 6, 10}) {
    const FieldParams g(m);
    for (const auto& coset : cyclotomic_cosets(g.n())) {
      const auto e = coset.front();
      const auto mp = minimal_polynomial(e, g);
      CHECK(mp.degree() == static_cast<int>(coset.size()));
      for (auto j : coset) CHECK(evaluate(mp, g.alpha_pow(j), g) == FieldElement{0});
    }
  }
}

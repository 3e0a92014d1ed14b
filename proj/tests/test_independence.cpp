#include <doctest.h>

#include <map>

#include "pseudospec/codes.hpp"
#include "pseudospec/error.hpp"
#include "pseudospec/independence.hpp"

using namespace pseudospec;

namespace {

// Brute force: enumerate every codeword and histogram the r chosen bits.
bool uniform_by_enumeration(const CyclicCode& code, const std::vector<std::uint32_t>& subset) {
  std::map<std::uint32_t, std::uint64_t> counts;
  const auto k = code.k();
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u) {
    std::vector<std::uint8_t> msg(k);
    for (std::uint32_t i = 0; i < k; ++i) msg[i] = (u >> i) & 1u;
    const auto w = encode(code, msg);
    std::uint32_t key = 0;
    for (std::size_t j = 0; j < subset.size(); ++j) key |= static_cast<std::uint32_t>(w.bit(subset[j])) << j;
    ++counts[key];
  }
  if (counts.size() != (std::size_t{1} << subset.size())) return false;
  for (const auto& [key, c] : counts) {
    if (c != (std::uint64_t{1} << k) >> subset.size()) return false;
  }
  return true;
}

DualCode simplex7() { return dual_code(CyclicCode(FieldParams(3), BinaryPolynomial::from_exponents({3, 1, 0}), 3)); }

}  // namespace

TEST_CASE("simplex code is pairwise but not 3-wise independent") {
  const auto dual = simplex7();
  const auto r2 = verify_r_independence(dual, 2, IndependenceMode::exact, 1000000, 1);
  CHECK(r2.pass);
  CHECK(r2.exhaustive);
  CHECK(r2.subsets_checked == 21);
  CHECK(r2.max_total_variation == 0.0);

  const auto r3 = verify_r_independence(dual, 3, IndependenceMode::exact, 1000000, 1);
  CHECK_FALSE(r3.pass);
  REQUIRE(r3.failing_subset.has_value());
  CHECK(r3.failing_subset->size() == 3);
  CHECK_FALSE(uniform_by_enumeration(dual.code(), *r3.failing_subset));
  // Three coordinates supporting a Hamming codeword satisfy one parity check: TV = 1/2.
  CHECK(r3.max_total_variation == doctest::Approx(0.5));
}

TEST_CASE("dual of the (15,7,5) BCH code is 4-wise independent") {
  const auto dual = dual_code(bch_generator(FieldParams(4), 5).code);
  const auto rep = verify_r_independence(dual, 4, IndependenceMode::exact, 1000000, 1);
  CHECK(rep.pass);
  CHECK(rep.exhaustive);
  CHECK(rep.subsets_checked == 1365);
  const auto r5 = verify_r_independence(dual, 5, IndependenceMode::exact, 1000000, 1);
  CHECK_FALSE(r5.pass);
  REQUIRE(r5.failing_subset.has_value());
  CHECK_FALSE(uniform_by_enumeration(dual.code(), *r5.failing_subset));
}

TEST_CASE("histogram and rank paths agree with enumeration") {
  for (int m : {3, 4, 5}) {
    const FieldParams f(m);
    for (int delta = 3; delta <= 7; delta += 2) {
      if (delta > static_cast<int>(f.n())) continue;
      const auto dual = dual_code(bch_generator(f, delta).code);
      if (dual.k_dual() > 12) continue;
      for (int r = 2; r <= 6; ++r) {
        const auto h = verify_r_independence(dual, r, IndependenceMode::exact, 400, 3, ExactPath::histogram);
        const auto k = verify_r_independence(dual, r, IndependenceMode::exact, 400, 3, ExactPath::rank);
        CHECK(h.pass == k.pass);
        CHECK(h.subsets_checked == k.subsets_checked);
        CHECK(h.max_total_variation == doctest::Approx(k.max_total_variation));
        if (!h.pass) CHECK_FALSE(uniform_by_enumeration(dual.code(), *h.failing_subset));
      }
    }
  }
}

TEST_CASE("independence level matches the base code's minimum distance") {
  // Coordinates of a dual codeword are exactly (d - 1)-wise independent.
  for (int delta : {5, 7, 11}) {
    const auto bch = bch_generator(FieldParams(5), delta);
    const auto d = min_distance_exact(bch.code);
    const auto dual = dual_code(bch.code);
    CHECK(verify_r_independence(dual, d - 1, IndependenceMode::exact, 1000000, 1).pass);
    CHECK_FALSE(verify_r_independence(dual, d, IndependenceMode::exact, 1000000, 1).pass);
  }
}

TEST_CASE("budgeted exact check samples subsets reproducibly") {
  const auto dual = dual_code(bch_generator(FieldParams(5), 7).code);
  const auto a = verify_r_independence(dual, 6, IndependenceMode::exact, 500, 9);
  const auto b = verify_r_independence(dual, 6, IndependenceMode::exact, 500, 9);
  CHECK_FALSE(a.exhaustive);
  CHECK(a.subsets_checked == 500);
  CHECK(a.pass);
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("sampled mode") {
  const auto dual = dual_code(bch_generator(FieldParams(10), 15).code);
  const auto rep = verify_r_independence(dual, 14, IndependenceMode::sampled, 20, 5);
  CHECK(rep.pass);
  CHECK(rep.threshold == doctest::Approx(4.0 * std::sqrt(16384.0 / 65536.0)));
  CHECK(rep.max_total_variation < rep.threshold);
  const auto small = verify_r_independence(dual, 3, IndependenceMode::sampled, 50, 5);
  CHECK(small.pass);
  CHECK(small.max_total_variation < 0.05);
}

TEST_CASE("independence input errors") {
  const auto dual = dual_code(bch_generator(FieldParams(10), 15).code);
  try {
    verify_r_independence(dual, 4, IndependenceMode::exact, 100, 1);
    FAIL("expected resource-limit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::resource_limit);
  }
  const auto small = simplex7();
  CHECK_THROWS_AS(verify_r_independence(small, 0, IndependenceMode::exact, 10, 1), Error);
  CHECK_THROWS_AS(verify_r_independence(small, 8, IndependenceMode::exact, 10, 1), Error);
  CHECK_THROWS_AS(verify_r_independence(small, 2, IndependenceMode::exact, 0, 1), Error);
}

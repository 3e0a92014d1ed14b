#include "pseudospec/codes.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <random>

#include "pseudospec/error.hpp"
#include "pseudospec/parallel.hpp"

namespace pseudospec {

namespace {

void put_u32le(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xffu), static_cast<char>((v >> 8) & 0xffu),
                         static_cast<char>((v >> 16) & 0xffu), static_cast<char>((v >> 24) & 0xffu)};
  out.write(bytes, 4);
}

std::uint32_t get_u32le(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) fail(Errc::invalid_input, "truncated codeword batch header");
  return std::uint32_t{bytes[0]} | (std::uint32_t{bytes[1]} << 8) | (std::uint32_t{bytes[2]} << 16) |
         (std::uint32_t{bytes[3]} << 24);
}

// Codeword as n bits padded to whole words.
std::vector<std::uint64_t> padded_words(const BinaryPolynomial& p, std::uint32_t n) {
  std::vector<std::uint64_t> out((n + 63) / 64, 0);
  auto src = p.words();
  std::copy(src.begin(), src.end(), out.begin());
  return out;
}

}  // namespace

CyclicCode::CyclicCode(FieldParams field, BinaryPolynomial generator, std::optional<int> designed_distance)
    : field_(std::move(field)), generator_(std::move(generator)), designed_distance_(designed_distance) {
  const std::uint32_t n = field_.n();
  if (generator_.is_zero()) fail(Errc::invalid_input, "zero generator polynomial");
  if (!divmod(BinaryPolynomial::cyclic_modulus(static_cast<int>(n)), generator_).remainder.is_zero()) {
    fail(Errc::invalid_input, "generator " + generator_.to_string() + " does not divide x^n+1");
  }
  const auto deg = static_cast<std::uint32_t>(generator_.degree());
  if (deg >= n) fail(Errc::degenerate_code, "generator of degree n leaves only the zero codeword");
  k_ = n - deg;
}

Codeword::Codeword(std::uint32_t n, BinaryPolynomial poly) : n_(n), poly_(std::move(poly)) {
  if (poly_.degree() >= static_cast<int>(n)) fail(Errc::invalid_input, "codeword polynomial exceeds length n");
}

BchResult bch_generator(const FieldParams& field, int delta) {
  const std::uint32_t n = field.n();
  if (delta < 3) fail(Errc::invalid_input, "designed distance must be at least 3");
  if (static_cast<std::uint32_t>(delta) > n) {
    fail(Errc::degenerate_code,
         "designed distance " + std::to_string(delta) + " exceeds block length " + std::to_string(n));
  }
  const int requested = delta;
  const bool promoted = delta % 2 == 0;
  if (promoted) ++delta;
  if (static_cast<std::uint32_t>(delta) > n) {
    fail(Errc::degenerate_code, "promoted designed distance exceeds block length");
  }

  std::vector<bool> covered(n, false);
  BinaryPolynomial g = BinaryPolynomial::from_mask(1);
  for (std::uint32_t e = 1; e < static_cast<std::uint32_t>(delta); ++e) {
    if (covered[e]) continue;
    for (auto c : cyclotomic_coset(e, n)) covered[c] = true;
    g = g * minimal_polynomial(e, field);
  }
  if (static_cast<std::uint32_t>(g.degree()) >= n) fail(Errc::degenerate_code, "BCH generator has degree n");

  CyclicCode code(field, std::move(g), delta);
  const std::uint64_t t = static_cast<std::uint64_t>(delta - 1) / 2;
  const std::uint64_t bound = static_cast<std::uint64_t>(field.m()) * t;
  if (bound < n && code.k() < n - bound) {
    fail(Errc::arithmetic_corruption, "BCH dimension below n - m*t");
  }
  return {std::move(code), requested, promoted};
}

DeltaForDimension delta_for_dimension(const FieldParams& field, std::uint32_t target_k) {
  const std::uint32_t n = field.n();
  std::vector<bool> covered(n, false);
  std::uint32_t degree = 0;
  auto cover = [&](std::uint32_t e) {
    if (e >= n || covered[e]) return;
    const auto coset = cyclotomic_coset(e, n);
    for (auto c : coset) covered[c] = true;
    degree += static_cast<std::uint32_t>(coset.size());
  };
  for (std::uint32_t delta = 3; delta <= n; delta += 2) {
    cover(delta - 2);
    cover(delta - 1);
    if (degree < n && n - degree <= target_k) return {static_cast<int>(delta), n - degree};
  }
  fail(Errc::invalid_input, "no BCH code of length " + std::to_string(n) + " has dimension <= " +
                                std::to_string(target_k));
}

DualCode dual_code(const CyclicCode& code) {
  const std::uint32_t n = code.n();
  auto [h, rem] = divmod(BinaryPolynomial::cyclic_modulus(static_cast<int>(n)), code.generator());
  if (!rem.is_zero()) fail(Errc::arithmetic_corruption, "nonzero remainder dividing x^n+1 by g(x)");
  if (code.k() == n) fail(Errc::degenerate_code, "dual of the full space is the zero code");
  CyclicCode dual(code.field(), h.reciprocal());
  if (dual.k() != n - code.k()) fail(Errc::arithmetic_corruption, "dual dimension differs from n - k");
  return DualCode(code, std::move(dual), std::move(h));
}

Codeword encode(const CyclicCode& code, const BinaryPolynomial& message) {
  if (message.degree() >= static_cast<int>(code.k())) {
    fail(Errc::invalid_input, "message has more than k = " + std::to_string(code.k()) + " bits");
  }
  return Codeword(code.n(), message * code.generator());
}

Codeword encode(const CyclicCode& code, std::span<const std::uint8_t> message) {
  if (message.size() != code.k()) {
    fail(Errc::invalid_input, "message length " + std::to_string(message.size()) + " != k = " +
                                  std::to_string(code.k()));
  }
  return encode(code, BinaryPolynomial::from_bits(message));
}

BinaryPolynomial sample_message(std::uint64_t seed, std::uint64_t index, std::uint32_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x636f6465u};  // stream tag
  std::mt19937_64 gen(seq);
  std::vector<std::uint64_t> words((k + 63) / 64);
  for (auto& w : words) w = gen();
  if (k % 64 != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << (k % 64)) - 1;
  return BinaryPolynomial::from_words(std::move(words));
}

std::vector<Codeword> sample_codewords(const DualCode& dual, std::size_t count, std::uint64_t seed,
                                       std::uint64_t first_index) {
  if (count == 0) fail(Errc::invalid_input, "sample count must be at least 1");
  std::vector<std::optional<Codeword>> slots(count);
  parallel_for(count, [&](std::size_t i) {
    slots[i] = encode(dual.code(), sample_message(seed, first_index + i, dual.k_dual()));
  });
  std::vector<Codeword> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<BinaryPolynomial> generator_basis(const CyclicCode& code) {
  std::vector<BinaryPolynomial> rows;
  rows.reserve(code.k());
  for (std::uint32_t i = 0; i < code.k(); ++i) rows.push_back(code.generator().shifted(static_cast<int>(i)));
  return rows;
}

int min_distance_exact(const CyclicCode& code) {
  const std::uint32_t k = code.k();
  if (k > kMinDistanceMaxDimension) {
    fail(Errc::resource_limit, "dimension " + std::to_string(k) +
                                   " exceeds the exhaustive enumeration budget of 2^24 codewords; use the designed distance");
  }
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& row : generator_basis(code)) rows.push_back(padded_words(row, code.n()));

  std::vector<std::uint64_t> current(rows.front().size(), 0);
  int best = static_cast<int>(code.n()) + 1;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    // Gray code: step i flips the row indexed by its lowest set bit.
    const auto& row = rows[static_cast<std::size_t>(std::countr_zero(i))];
    int w = 0;
    for (std::size_t j = 0; j < current.size(); ++j) {
      current[j] ^= row[j];
      w += std::popcount(current[j]);
    }
    best = std::min(best, w);
  }
  return best;
}

nlohmann::json to_json(const DualCode& dual) {
  const auto& base = dual.base();
  nlohmann::json j;
  j["m"] = base.m();
  j["n"] = base.n();
  if (auto d = base.designed_distance()) j["delta"] = *d;
  else j["delta"] = nullptr;
  j["generator_hex"] = base.generator().to_hex();
  j["k"] = base.k();
  j["dual_generator_hex"] = dual.generator().to_hex();
  j["k_dual"] = dual.k_dual();
  return j;
}

void write_codeword_batch(std::ostream& out, std::span<const Codeword> words) {
  const std::uint32_t n = words.empty() ? 0 : words.front().size();
  put_u32le(out, n);
  put_u32le(out, static_cast<std::uint32_t>(words.size()));
  const std::size_t bytes = (n + 7) / 8;
  std::vector<char> buf(bytes);
  for (const auto& w : words) {
    if (w.size() != n) fail(Errc::invalid_input, "codeword batch mixes lengths");
    std::fill(buf.begin(), buf.end(), 0);
    const auto src = w.polynomial().words();
    for (std::size_t b = 0; b < bytes && b / 8 < src.size(); ++b) {
      buf[b] = static_cast<char>((src[b / 8] >> ((b % 8) * 8)) & 0xffu);
    }
    out.write(buf.data(), static_cast<std::streamsize>(bytes));
  }
}

std::vector<Codeword> read_codeword_batch(std::istream& in) {
  const std::uint32_t n = get_u32le(in);
  const std::uint32_t count = get_u32le(in);
  const std::size_t bytes = (n + 7) / 8;
  std::vector<Codeword> out;
  out.reserve(count);
  std::vector<unsigned char> buf(bytes);
  for (std::uint32_t c = 0; c < count; ++c) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes))) {
      fail(Errc::invalid_input, "truncated codeword batch");
    }
    std::vector<std::uint64_t> words((bytes + 7) / 8, 0);
    for (std::size_t b = 0; b < bytes; ++b) words[b / 8] |= std::uint64_t{buf[b]} << ((b % 8) * 8);
    out.emplace_back(n, BinaryPolynomial::from_words(std::move(words)));
  }
  return out;
}

}  // namespace pseudospec

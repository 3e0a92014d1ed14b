#include "pseudospec/ensembles.hpp"

#include <ostream>
#include <random>

namespace pseudospec {

namespace {

void check_word_length(const Codeword& word, std::uint64_t needed) {
  if (needed > word.size()) {
    fail(Errc::invalid_input, "packing needs " + std::to_string(needed) + " bits but the codeword has " +
                                  std::to_string(word.size()));
  }
}

template <typename T>
void put_le(std::ostream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xffu));
}

// Fair bits for a random-kind sample, wrapped as a pseudo codeword so both
// families share one packing path.
Codeword random_word(const EnsembleSpec& spec, std::uint64_t index) {
  const std::uint64_t bits = spec.bits_needed();
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x72616e64u};  // stream tag
  std::mt19937_64 gen(seq);
  std::vector<std::uint64_t> words((bits + 63) / 64);
  for (auto& w : words) w = gen();
  if (bits % 64 != 0) words.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  return Codeword(static_cast<std::uint32_t>(bits), BinaryPolynomial::from_words(std::move(words)));
}

}  // namespace

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::pseudo_wigner: return "pseudo-wigner";
    case EnsembleKind::pseudo_mp: return "pseudo-mp";
    case EnsembleKind::random_wigner: return "random-wigner";
    case EnsembleKind::random_mp: return "random-mp";
  }
  return "unknown";
}

EnsembleKind parse_ensemble_kind(const std::string& name) {
  for (auto k : {EnsembleKind::pseudo_wigner, EnsembleKind::pseudo_mp, EnsembleKind::random_wigner,
                 EnsembleKind::random_mp}) {
    if (to_string(k) == name) return k;
  }
  fail(Errc::invalid_input, "unknown ensemble kind '" + name + "'");
}

double EnsembleSpec::rho() const {
  if (!r) return 1.0;
  if (N <= 1) return 0.0;
  return std::log(static_cast<double>(*r)) / std::log(static_cast<double>(N));
}

std::uint64_t EnsembleSpec::bits_needed() const {
  const auto n = static_cast<std::uint64_t>(N);
  return is_wigner(kind) ? n * (n + 1) / 2 : n * static_cast<std::uint64_t>(p);
}

EnsembleSpec make_spec(EnsembleKind kind, int N, int p, double gamma, std::optional<int> r,
                       std::uint64_t seed, std::optional<std::uint32_t> code_length) {
  if (N < 1) fail(Errc::invalid_input, "matrix order N must be positive");
  EnsembleSpec spec;
  spec.kind = kind;
  spec.N = N;
  spec.seed = seed;
  if (is_wigner(kind)) {
    spec.p = N;
    spec.gamma = 1.0;
  } else {
    if (p <= 0) {
      if (!(gamma > 0.0 && gamma <= 1.0)) fail(Errc::invalid_input, "MP ensembles need p or gamma in (0, 1]");
      p = static_cast<int>(std::floor(gamma * N));
    }
    if (p < 1 || p > N) fail(Errc::invalid_input, "MP ensembles need 1 <= p <= N");
    spec.p = p;
    spec.gamma = static_cast<double>(p) / N;
  }
  if (is_pseudo(kind)) {
    if (!r || *r < 1) fail(Errc::invalid_input, "pseudo ensembles need an independence level r >= 1");
    spec.r = r;
    if (!code_length) fail(Errc::invalid_input, "pseudo ensembles need the code length");
    if (spec.bits_needed() > *code_length) {
      fail(Errc::invalid_input, to_string(kind) + " with N=" + std::to_string(N) + (is_wigner(kind) ? "" : ", p=" + std::to_string(spec.p)) +
                                    " needs " + std::to_string(spec.bits_needed()) + " bits but the code length is " +
                                    std::to_string(*code_length));
    }
  }
  return spec;
}

SignMatrix pack_symmetric(const Codeword& word, int N) {
  if (N < 1) fail(Errc::invalid_input, "matrix order N must be positive");
  const auto n = static_cast<std::uint64_t>(N);
  check_word_length(word, n * (n + 1) / 2);
  SignMatrix out(N, N);
  std::uint32_t bit = 0;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      const std::int8_t v = word.bit(bit++) ? -1 : 1;
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

SignMatrix pack_rect(const Codeword& word, int N, int p) {
  if (N < 1 || p < 1) fail(Errc::invalid_input, "matrix dimensions must be positive");
  if (p > N) fail(Errc::invalid_input, "rectangular packing needs p <= N");
  check_word_length(word, static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(p));
  SignMatrix out(N, p);
  std::uint32_t bit = 0;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < p; ++j) out(i, j) = word.bit(bit++) ? -1 : 1;
  }
  return out;
}

SignMatrix random_baseline(const EnsembleSpec& spec, std::uint64_t index) {
  if (is_pseudo(spec.kind)) fail(Errc::invalid_input, "random baseline requested for a pseudo ensemble");
  const Codeword word = random_word(spec, index);
  return is_wigner(spec.kind) ? pack_symmetric(word, spec.N) : pack_rect(word, spec.N, spec.p);
}

SignMatrix sample_signs(const EnsembleSpec& spec, const DualCode* dual, std::uint64_t index) {
  if (!is_pseudo(spec.kind)) return random_baseline(spec, index);
  if (dual == nullptr) fail(Errc::invalid_input, "pseudo ensembles need a dual code");
  // One codeword per matrix, never split across matrices.
  const Codeword word = encode(dual->code(), sample_message(spec.seed, index, dual->k_dual()));
  return is_wigner(spec.kind) ? pack_symmetric(word, spec.N) : pack_rect(word, spec.N, spec.p);
}

Eigen::MatrixXd sample_matrix(const EnsembleSpec& spec, const DualCode* dual, std::uint64_t index) {
  const SignMatrix signs = sample_signs(spec, dual, index);
  return is_wigner(spec.kind) ? scaled_wigner<double>(signs) : scm<double>(signs);
}

double norm_normaliser(const EnsembleSpec& spec) {
  if (is_wigner(spec.kind)) return 1.0;
  const double root = 1.0 + std::sqrt(spec.gamma);
  return root * root;
}

nlohmann::json to_json(const EnsembleSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  j["N"] = spec.N;
  if (!is_wigner(spec.kind)) {
    j["p"] = spec.p;
    j["gamma"] = spec.gamma;
  }
  j["r"] = spec.r ? nlohmann::json(*spec.r) : nlohmann::json("inf");
  j["rho"] = spec.rho();
  j["seed"] = spec.seed;
  return j;
}

void write_matrix_csv(std::ostream& out, const SignMatrix& signs) {
  for (Eigen::Index i = 0; i < signs.rows(); ++i) {
    for (Eigen::Index j = 0; j < signs.cols(); ++j) {
      if (j > 0) out << ',';
      out << static_cast<int>(signs(i, j));
    }
    out << '\n';
  }
}

void write_sign_batch(std::ostream& out, const EnsembleSpec& spec, std::span<const SignMatrix> matrices) {
  out.write("PSGN", 4);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(spec.kind));
  for (int i = 0; i < 3; ++i) out.put('\0');
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec.N));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec.p));
  put_le<std::uint64_t>(out, spec.seed);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(matrices.size()));
  for (const auto& m : matrices) {
    const std::size_t entries = static_cast<std::size_t>(m.rows() * m.cols());
    std::vector<char> buf((entries + 7) / 8, 0);
    std::size_t e = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j, ++e) {
        if (m(i, j) < 0) buf[e / 8] = static_cast<char>(buf[e / 8] | (1 << (e % 8)));
      }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

}  // namespace pseudospec

#pragma once

// Sign-matrix ensembles: codeword packing into symmetric (pseudo-Wigner) and
// rectangular (pseudo-Marchenko-Pastur) matrices, their scaled real forms,
// and seeded truly random baselines.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "pseudospec/codes.hpp"
#include "pseudospec/error.hpp"

namespace pseudospec {

/// Entries in {+1, -1}.
using SignMatrix = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class EnsembleKind { pseudo_wigner, pseudo_mp, random_wigner, random_mp };

std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(const std::string& name);
inline bool is_wigner(EnsembleKind k) { return k == EnsembleKind::pseudo_wigner || k == EnsembleKind::random_wigner; }
inline bool is_pseudo(EnsembleKind k) { return k == EnsembleKind::pseudo_wigner || k == EnsembleKind::pseudo_mp; }

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::random_wigner;
  int N = 0;
  int p = 0;                 // columns; MP kinds only
  double gamma = 0.0;        // p / N; MP kinds only
  std::optional<int> r;      // guaranteed independence level; nullopt for random kinds
  std::uint64_t seed = 0;

  /// log_N(r); 1 for random kinds, where every coordinate is independent.
  double rho() const;
  /// N(N+1)/2 for Wigner kinds, N p for MP kinds.
  std::uint64_t bits_needed() const;
};

/// Builds and validates a spec. For MP kinds p <= 0 selects p = floor(gamma N).
/// `code_length` is the length of the underlying code (pseudo kinds only).
EnsembleSpec make_spec(EnsembleKind kind, int N, int p, double gamma, std::optional<int> r,
                       std::uint64_t seed, std::optional<std::uint32_t> code_length = std::nullopt);

/// Upper triangle (diagonal included) filled row-major from the leading
/// N(N+1)/2 bits, bit b -> (-1)^b, mirrored below the diagonal.
SignMatrix pack_symmetric(const Codeword& word, int N);
/// Rows left-to-right, top-to-bottom from the leading N p bits; requires p <= N.
SignMatrix pack_rect(const Codeword& word, int N, int p);

/// Sign matrix scaled by 1 / (2 sqrt N).
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> scaled_wigner(const SignMatrix& signs) {
  const Scalar scale = Scalar(1) / (Scalar(2) * std::sqrt(static_cast<Scalar>(signs.rows())));
  return signs.cast<Scalar>() * scale;
}

/// Y^T Y with Y = signs / sqrt(N). The Gram product is formed in integers so
/// the unit diagonal and symmetry are exact.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> scm(const SignMatrix& signs) {
  const Eigen::MatrixXi s = signs.cast<int>();
  const Eigen::MatrixXi gram = s.transpose() * s;
  return gram.cast<Scalar>() / static_cast<Scalar>(signs.rows());
}

/// I.i.d. fair signs for sample `index` of a random kind, laid out exactly as
/// the packing functions lay out codeword bits.
SignMatrix random_baseline(const EnsembleSpec& spec, std::uint64_t index = 0);

/// Sign matrix for sample `index` of any kind. Pseudo kinds need the dual code.
SignMatrix sample_signs(const EnsembleSpec& spec, const DualCode* dual, std::uint64_t index);

/// Scaled real matrix for sample `index`: A = signs / (2 sqrt N) for Wigner
/// kinds, Y^T Y for MP kinds.
Eigen::MatrixXd sample_matrix(const EnsembleSpec& spec, const DualCode* dual, std::uint64_t index);

/// Divisor that maps the sample's spectral norm to the [-1, 1]-normalised
/// scale: 1 for Wigner kinds, (1 + sqrt gamma)^2 for MP kinds.
double norm_normaliser(const EnsembleSpec& spec);

nlohmann::json to_json(const EnsembleSpec& spec);

void write_matrix_csv(std::ostream& out, const SignMatrix& signs);

/// Packed sign batch: magic "PSGN", uint8 kind (0..3 in EnsembleKind order),
/// three zero bytes, uint32 N, uint32 p (N for Wigner kinds), uint64 seed,
/// uint32 count, all little-endian; then per matrix ceil(rows*cols/8) bytes,
/// entries row-major, bit set for -1, least significant bit first.
void write_sign_batch(std::ostream& out, const EnsembleSpec& spec, std::span<const SignMatrix> matrices);

}  // namespace pseudospec

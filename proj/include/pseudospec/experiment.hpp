#pragma once

// Batch drivers shared by the CLI and the acceptance suite: per-sample norms,
// spectra, moments, summary statistics and histograms.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pseudospec/codes.hpp"
#include "pseudospec/ensembles.hpp"
#include "pseudospec/laws.hpp"
#include "pseudospec/spectral.hpp"

namespace pseudospec {

/// A spec together with the code it draws from (pseudo kinds only).
struct EnsembleSource {
  EnsembleSpec spec;
  std::optional<DualCode> dual;

  const DualCode* dual_ptr() const { return dual ? &*dual : nullptr; }
  Eigen::MatrixXd matrix(std::uint64_t index) const { return sample_matrix(spec, dual_ptr(), index); }
};

/// Builds the BCH dual for pseudo kinds (r = delta - 1) and validates packing.
EnsembleSource make_source(EnsembleKind kind, int m, int delta, int N, int p, double gamma, std::uint64_t seed);

/// The limit law an ensemble's spectrum is compared to.
LimitLaw limit_law(const EnsembleSpec& spec);

/// ||sample|| / norm_normaliser(spec) for indices [first, first + count).
std::vector<double> normalised_norms(const EnsembleSource& source, std::uint64_t first, std::size_t count);

/// Sorted spectra for indices [first, first + count).
std::vector<SpectralSummary<double>> spectra(const EnsembleSource& source, std::uint64_t first, std::size_t count);

/// (norm - 1) N^{min(rho, 2/3)} / log^{1+epsilon} N
double deviation_statistic(double normalised_norm, const EnsembleSpec& spec, double epsilon);

struct SampleStats {
  std::size_t count = 0;
  double mean = 0;
  double stddev = 0;  // unbiased
  double min = 0;
  double max = 0;
};
SampleStats describe(std::span<const double> values);

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

struct Histogram {
  std::vector<double> edges;    // bins + 1 entries
  std::vector<double> density;  // integrates to 1
};
/// Freedman-Diaconis bin width 2 IQR n^{-1/3}, densities normalised.
Histogram freedman_diaconis(std::span<const double> values);

/// sup_x |F_a(x) - F_b(x)| between two empirical distributions.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace pseudospec

#include "pseudospec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pseudospec/parallel.hpp"

namespace pseudospec {

EnsembleSource make_source(EnsembleKind kind, int m, int delta, int N, int p, double gamma, std::uint64_t seed) {
  EnsembleSource source;
  if (is_pseudo(kind)) {
    const FieldParams field(m);
    auto bch = bch_generator(field, delta);
    source.dual = dual_code(bch.code);
    source.spec = make_spec(kind, N, p, gamma, *bch.code.designed_distance() - 1, seed, field.n());
  } else {
    source.spec = make_spec(kind, N, p, gamma, std::nullopt, seed);
  }
  return source;
}

LimitLaw limit_law(const EnsembleSpec& spec) {
  return is_wigner(spec.kind) ? LimitLaw::semicircle() : LimitLaw::marchenko_pastur(spec.gamma);
}

std::vector<double> normalised_norms(const EnsembleSource& source, std::uint64_t first, std::size_t count) {
  std::vector<double> out(count);
  const double scale = norm_normaliser(source.spec);
  parallel_for(count, [&](std::size_t i) { out[i] = spectral_norm(source.matrix(first + i)) / scale; });
  return out;
}

std::vector<SpectralSummary<double>> spectra(const EnsembleSource& source, std::uint64_t first, std::size_t count) {
  std::vector<SpectralSummary<double>> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = symmetric_eigen(source.matrix(first + i)); });
  return out;
}

double deviation_statistic(double normalised_norm, const EnsembleSpec& spec, double epsilon) {
  const double n = spec.N;
  const double exponent = std::min(spec.rho(), 2.0 / 3.0);
  return (normalised_norm - 1.0) * std::pow(n, exponent) / std::pow(std::log(n), 1.0 + epsilon);
}

SampleStats describe(std::span<const double> values) {
  SampleStats s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Histogram freedman_diaconis(std::span<const double> values) {
  Histogram h;
  if (values.empty()) return h;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
  std::size_t bins = 1;
  if (width > 0 && hi > lo) {
    bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1, 10000);
    width = (hi - lo) / static_cast<double>(bins);
  } else {
    width = hi > lo ? hi - lo : 1.0;
  }
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : sorted) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    ++counts[std::min(b, bins - 1)];
  }
  h.density.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    h.density[b] = static_cast<double>(counts[b]) / (static_cast<double>(sorted.size()) * width);
  }
  return h;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) fail(Errc::invalid_input, "two-sample KS needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

}  // namespace pseudospec

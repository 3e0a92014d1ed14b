#include "pseudospec/independence.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <memory>
#include <cmath>
#include <random>

#include "pseudospec/error.hpp"
#include "pseudospec/parallel.hpp"

namespace pseudospec {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr int kMaxHistogramBits = 20;

std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  // Unbiased draw in [0, bound) by rejection; portable unlike
  // std::uniform_int_distribution.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = gen();
  } while (v >= limit);
  return v % bound;
}

// C(n, r), saturating at `cap` + 1.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  long double acc = 1.0L;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * static_cast<long double>(n - r + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(acc));
}

// Lexicographic successor of an r-combination of {0..n-1}; false at the end.
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t r = c.size();
  for (std::size_t i = r; i-- > 0;) {
    if (c[i] < n - r + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::uint32_t> random_subset(std::mt19937_64& gen, std::uint32_t n, int r) {
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(r));
  if (static_cast<std::uint32_t>(r) * 2 > n) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < r; ++i) {
      const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(bounded(gen, n - static_cast<std::uint64_t>(i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      out.push_back(pool[static_cast<std::size_t>(i)]);
    }
  } else {
    while (out.size() < static_cast<std::size_t>(r)) {
      const auto c = static_cast<std::uint32_t>(bounded(gen, n));
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int gf2_rank(std::vector<std::uint32_t> vectors) {
  int rank = 0;
  for (int bit = 31; bit >= 0 && !vectors.empty(); --bit) {
    auto pivot = std::find_if(vectors.begin(), vectors.end(), [bit](std::uint32_t v) { return (v >> bit) & 1u; });
    if (pivot == vectors.end()) continue;
    const std::uint32_t p = *pivot;
    vectors.erase(pivot);
    for (auto& v : vectors) {
      if ((v >> bit) & 1u) v ^= p;
    }
    ++rank;
  }
  return rank;
}

double tv_from_histogram(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
  const double uniform = 1.0 / static_cast<double>(counts.size());
  double tv = 0.0;
  for (auto c : counts) tv += std::abs(static_cast<double>(c) / static_cast<double>(total) - uniform);
  return 0.5 * tv;
}

bool histogram_uniform(const std::vector<std::uint64_t>& counts) {
  return std::all_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == counts.front(); });
}

// Marginal with bit `drop` summed out.
std::vector<std::uint64_t> marginalize(const std::vector<std::uint64_t>& counts, int drop) {
  std::vector<std::uint64_t> out(counts.size() / 2, 0);
  for (std::size_t v = 0; v < counts.size(); ++v) {
    const std::size_t low = v & ((std::size_t{1} << drop) - 1);
    const std::size_t high = (v >> (drop + 1)) << drop;
    out[high | low] += counts[v];
  }
  return out;
}

class SubsetEvaluator {
 public:
  virtual ~SubsetEvaluator() = default;
  virtual double total_variation(const std::vector<std::uint32_t>& subset) const = 0;
};

// Columns of the k x n cyclic generator matrix as k-bit masks.
std::vector<std::uint32_t> generator_columns(const CyclicCode& code) {
  const auto& g = code.generator();
  const int deg = g.degree();
  std::vector<std::uint32_t> cols(code.n(), 0);
  for (std::uint32_t j = 0; j < code.n(); ++j) {
    for (std::uint32_t i = 0; i < code.k(); ++i) {
      const int e = static_cast<int>(j) - static_cast<int>(i);
      if (e >= 0 && e <= deg && g.coeff(e)) cols[j] |= 1u << i;
    }
  }
  return cols;
}

class RankEvaluator final : public SubsetEvaluator {
 public:
  explicit RankEvaluator(const CyclicCode& code) : cols_(generator_columns(code)) {}

  double total_variation(const std::vector<std::uint32_t>& subset) const override {
    std::vector<std::uint32_t> vecs;
    vecs.reserve(subset.size());
    for (auto j : subset) vecs.push_back(cols_[j]);
    const int r = static_cast<int>(subset.size());
    const int rank = gf2_rank(vecs);
    if (rank == r) {
      // Uniform subsets must stay uniform after dropping any coordinate.
      for (int d = 0; d < r; ++d) {
        auto sub = vecs;
        sub.erase(sub.begin() + d);
        if (gf2_rank(std::move(sub)) != r - 1) {
          fail(Errc::arithmetic_corruption, "independent columns with a dependent sub-selection");
        }
      }
      return 0.0;
    }
    // The pattern is uniform on a coset of a 2^rank subspace.
    return 1.0 - std::ldexp(1.0, rank - r);
  }

 private:
  std::vector<std::uint32_t> cols_;
};

class HistogramEvaluator final : public SubsetEvaluator {
 public:
  explicit HistogramEvaluator(const CyclicCode& code) : cols_(generator_columns(code)), k_(code.k()) {}

  double total_variation(const std::vector<std::uint32_t>& subset) const override {
    const int r = static_cast<int>(subset.size());
    std::vector<std::uint64_t> counts(std::size_t{1} << r, 0);
    const std::uint64_t total = std::uint64_t{1} << k_;
    for (std::uint64_t u = 0; u < total; ++u) {
      std::size_t pattern = 0;
      for (int b = 0; b < r; ++b) {
        pattern |= static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(u) & cols_[subset[static_cast<std::size_t>(b)]]) & 1) << b;
      }
      ++counts[pattern];
    }
    const double tv = tv_from_histogram(counts, total);
    if (tv == 0.0) {
      for (int d = 0; d < r; ++d) {
        if (!histogram_uniform(marginalize(counts, d))) {
          fail(Errc::arithmetic_corruption, "uniform joint histogram with a non-uniform marginal");
        }
      }
    }
    return tv;
  }

 private:
  std::vector<std::uint32_t> cols_;
  std::uint32_t k_;
};

class SampledEvaluator final : public SubsetEvaluator {
 public:
  // Stores sampled bits only for the coordinates in `coords`, coordinate-major.
  SampledEvaluator(const CyclicCode& code, std::uint64_t seed, const std::vector<std::uint32_t>& coords)
      : row_of_(code.n(), kNoRow) {
    for (std::size_t c = 0; c < coords.size(); ++c) row_of_[coords[c]] = c;
    bits_.assign(coords.size() * kSampledCodewords, 0);
    parallel_for(kSampledCodewords, [&](std::size_t i) {
      const Codeword word = encode(code, sample_message(seed, i, code.k()));
      for (std::size_t c = 0; c < coords.size(); ++c) {
        bits_[c * kSampledCodewords + i] = word.bit(coords[c]) ? 1 : 0;
      }
    });
  }

  double total_variation(const std::vector<std::uint32_t>& subset) const override {
    const int r = static_cast<int>(subset.size());
    std::vector<std::uint64_t> counts(std::size_t{1} << r, 0);
    std::vector<const std::uint8_t*> rows;
    for (auto j : subset) rows.push_back(&bits_[row_of_[j] * kSampledCodewords]);
    for (std::size_t i = 0; i < kSampledCodewords; ++i) {
      std::size_t pattern = 0;
      for (int b = 0; b < r; ++b) pattern |= static_cast<std::size_t>(rows[static_cast<std::size_t>(b)][i]) << b;
      ++counts[pattern];
    }
    return tv_from_histogram(counts, kSampledCodewords);
  }

 private:
  static constexpr std::size_t kNoRow = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_of_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace

IndependenceReport verify_r_independence(const CyclicCode& code, int r, IndependenceMode mode,
                                         std::uint64_t budget, std::uint64_t seed, ExactPath path) {
  const std::uint32_t n = code.n();
  if (r < 1 || static_cast<std::uint32_t>(r) > n) fail(Errc::invalid_input, "r must lie in [1, n]");
  if (budget == 0) fail(Errc::invalid_input, "subset budget must be positive");

  IndependenceReport report;
  report.r_tested = r;
  report.mode = mode;

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x73756273u};
  std::mt19937_64 gen(seq);

  std::unique_ptr<SubsetEvaluator> evaluator;
  std::vector<std::vector<std::uint32_t>> sampled_subsets;
  if (mode == IndependenceMode::exact) {
    if (code.k() > kExactMaxDimension) {
      fail(Errc::resource_limit, "exact r-independence needs k <= 20 (got k = " + std::to_string(code.k()) + ")");
    }
    if (path == ExactPath::automatic) {
      path = (code.k() <= kHistogramMaxDimension && r <= kMaxHistogramBits) ? ExactPath::histogram : ExactPath::rank;
    }
    if (path == ExactPath::histogram) {
      if (r > kMaxHistogramBits) fail(Errc::invalid_input, "histogram path supports r <= 20");
      evaluator = std::make_unique<HistogramEvaluator>(code);
    } else {
      evaluator = std::make_unique<RankEvaluator>(code);
    }
  } else {
    if (r > 16) fail(Errc::invalid_input, "sampled mode supports r <= 16");
    std::vector<std::uint32_t> coords;
    for (std::uint64_t i = 0; i < budget; ++i) {
      sampled_subsets.push_back(random_subset(gen, n, r));
      coords.insert(coords.end(), sampled_subsets.back().begin(), sampled_subsets.back().end());
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    evaluator = std::make_unique<SampledEvaluator>(code, seed, coords);
    report.threshold = 4.0 * std::sqrt(std::ldexp(1.0, r) / static_cast<double>(kSampledCodewords));
  }

  const std::uint64_t total = binomial_capped(n, static_cast<std::uint64_t>(r), budget);
  report.exhaustive = mode == IndependenceMode::exact && total <= budget;
  const std::uint64_t to_check = report.exhaustive ? total : budget;

  std::vector<std::uint32_t> combo(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) combo[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);

  double worst = -1.0;
  std::vector<std::uint32_t> worst_subset;
  std::uint64_t checked = 0;
  std::vector<std::vector<std::uint32_t>> chunk;
  std::vector<double> tv;
  while (checked < to_check) {
    chunk.clear();
    while (chunk.size() < kChunk && checked + chunk.size() < to_check) {
      const std::uint64_t idx = checked + chunk.size();
      if (report.exhaustive) {
        chunk.push_back(combo);
        next_combination(combo, n);
      } else if (mode == IndependenceMode::sampled) {
        chunk.push_back(sampled_subsets[static_cast<std::size_t>(idx)]);
      } else {
        chunk.push_back(random_subset(gen, n, r));
      }
    }
    tv.assign(chunk.size(), 0.0);
    parallel_for(chunk.size(), [&](std::size_t i) { tv[i] = evaluator->total_variation(chunk[i]); });
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (tv[i] > worst) {
        worst = tv[i];
        worst_subset = chunk[i];
      }
    }
    checked += chunk.size();
  }

  report.subsets_checked = checked;
  report.max_total_variation = std::max(worst, 0.0);
  report.pass = mode == IndependenceMode::exact ? report.max_total_variation == 0.0
                                                : report.max_total_variation <= report.threshold;
  if (!report.pass) report.failing_subset = worst_subset;
  return report;
}

nlohmann::json to_json(const IndependenceReport& report) {
  nlohmann::json j;
  j["r_tested"] = report.r_tested;
  j["mode"] = report.mode == IndependenceMode::exact ? "exact" : "sampled";
  j["subsets_checked"] = report.subsets_checked;
  j["exhaustive"] = report.exhaustive;
  j["max_total_variation"] = report.max_total_variation;
  if (report.mode == IndependenceMode::sampled) j["threshold"] = report.threshold;
  j["verdict"] = report.pass ? "pass" : "fail";
  j["failing_subset"] = report.failing_subset ? nlohmann::json(*report.failing_subset) : nlohmann::json(nullptr);
  return j;
}

}  // namespace pseudospec

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pseudospec/pseudospec.hpp"

namespace pseudospec::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kCheckpointEvery = 1000;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

fs::path require_out_dir(const ExperimentConfig& config) {
  if (config.out.empty()) fail(Errc::invalid_input, "--out is required for " + config.command);
  fs::path dir(config.out);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) fail(Errc::invalid_input, "cannot open " + path.string() + " for writing");
  return f;
}

void write_sidecar(const fs::path& dir, const ExperimentConfig& config, json extra) {
  extra["config"] = to_json(config);
  extra["version"] = PSEUDOSPEC_VERSION;
  auto f = open_out(dir / "run.json");
  f << extra.dump(2) << '\n';
}

EnsembleSource source_for(const ExperimentConfig& c, std::ostream& err) {
  const EnsembleKind kind = parse_ensemble_kind(c.kind);
  if (is_pseudo(kind) && c.delta % 2 == 0) {
    err << "warning: even designed distance " << c.delta << " promoted to " << c.delta + 1 << '\n';
  }
  return make_source(kind, c.m, c.delta, c.N, c.p, c.gamma, c.seed);
}

json histogram_json(const Histogram& h) { return {{"edges", h.edges}, {"density", h.density}}; }

void write_histogram_csv(const fs::path& path, const Histogram& h) {
  auto f = open_out(path);
  f << "bin_left,bin_right,density\n";
  for (std::size_t b = 0; b < h.density.size(); ++b) {
    f << fmt_double(h.edges[b]) << ',' << fmt_double(h.edges[b + 1]) << ',' << fmt_double(h.density[b]) << '\n';
  }
}

BchResult build_bch(const ExperimentConfig& c, std::ostream& err) {
  const FieldParams field(c.m);
  auto bch = bch_generator(field, c.delta);
  if (bch.delta_promoted) {
    err << "warning: even designed distance " << bch.requested_delta << " promoted to "
        << *bch.code.designed_distance() << '\n';
  }
  return bch;
}

// ---------------------------------------------------------------------------

int cmd_genpoly(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto bch = build_bch(c, err);
  const auto dual = dual_code(bch.code);
  json j = to_json(dual);
  const int delta = *bch.code.designed_distance();
  j["requested_delta"] = bch.requested_delta;
  j["t"] = (delta - 1) / 2;
  j["dimension_lower_bound"] = static_cast<std::int64_t>(bch.code.n()) - static_cast<std::int64_t>(c.m) * ((delta - 1) / 2);
  j["generator"] = bch.code.generator().to_string();
  if (bch.code.k() <= kMinDistanceMaxDimension) j["min_distance"] = min_distance_exact(bch.code);
  if (c.target_k >= 0) {
    const auto found = delta_for_dimension(bch.code.field(), static_cast<std::uint32_t>(c.target_k));
    j["target_k"] = c.target_k;
    j["delta_for_target_k"] = found.delta;
    j["k_at_delta_for_target_k"] = found.k;
  }
  out << j.dump(2) << '\n';
  return kSuccess;
}

int cmd_dual(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto bch = build_bch(c, err);
  const auto dual = dual_code(bch.code);
  json j = to_json(dual);
  j["check_polynomial_hex"] = dual.check_polynomial().to_hex();
  j["independence_r"] = *bch.code.designed_distance() - 1;
  if (dual.k_dual() <= kMinDistanceMaxDimension) j["dual_min_distance"] = min_distance_exact(dual);
  out << j.dump(2) << '\n';
  return kSuccess;
}

int cmd_sample(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto bch = build_bch(c, err);
  const auto dual = dual_code(bch.code);
  const auto dir = require_out_dir(c);
  const auto words = sample_codewords(dual, c.count, c.seed);
  auto f = open_out(dir / "codewords.bin", std::ios::out | std::ios::binary);
  write_codeword_batch(f, words);
  write_sidecar(dir, c, {{"code", to_json(dual)}});
  out << "wrote " << words.size() << " codewords of length " << dual.n() << " to " << (dir / "codewords.bin").string() << '\n';
  return kSuccess;
}

int cmd_norms(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto source = source_for(c, err);
  const auto dir = require_out_dir(c);
  const auto norms_path = dir / "norms.csv";

  std::vector<double> norms;
  if (c.resume && fs::exists(norms_path)) {
    std::ifstream in(norms_path);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (!line.empty()) norms.push_back(std::stod(line));
    }
    err << "resuming after " << norms.size() << " samples\n";
  } else {
    auto f = open_out(norms_path);
    f << "norm\n";
  }

  // Norms are streamed in index order and flushed at every checkpoint.
  auto f = open_out(norms_path, std::ios::out | std::ios::app);
  while (norms.size() < c.count) {
    const std::size_t batch = std::min<std::size_t>(kCheckpointEvery, c.count - norms.size());
    const auto values = normalised_norms(source, norms.size(), batch);
    for (double v : values) f << fmt_double(v) << '\n';
    f.flush();
    norms.insert(norms.end(), values.begin(), values.end());
  }
  f.close();

  std::vector<double> deviation;
  deviation.reserve(norms.size());
  for (double v : norms) deviation.push_back(deviation_statistic(v, source.spec, c.epsilon));
  std::vector<double> abs_dev;
  for (double d : deviation) abs_dev.push_back(std::abs(d));

  const auto hist = freedman_diaconis(norms);
  write_histogram_csv(dir / "histogram.csv", hist);

  const auto s = describe(norms);
  const auto ds = describe(deviation);
  json summary = {{"count", s.count}, {"mean", s.mean}, {"std", s.stddev}, {"min", s.min}, {"max", s.max},
                  {"deviation_mean", ds.mean}, {"deviation_std", ds.stddev},
                  {"deviation_abs_mean", describe(abs_dev).mean},
                  {"histogram", histogram_json(hist)}};
  json extra = {{"spec", to_json(source.spec)}, {"summary", summary}};
  if (source.dual) extra["code"] = to_json(*source.dual);
  write_sidecar(dir, c, extra);
  out << summary.dump(2) << '\n';
  return kSuccess;
}

int cmd_esd(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto source = source_for(c, err);
  const auto dir = require_out_dir(c);
  const auto law = limit_law(source.spec);
  const auto specs = spectra(source, 0, c.count);

  std::vector<double> ks;
  std::vector<double> pooled;
  {
    auto f = open_out(dir / "spectra.csv");
    for (const auto& sp : specs) {
      ks.push_back(ks_distance(sp, law));
      for (Eigen::Index i = 0; i < sp.size(); ++i) {
        if (i > 0) f << ',';
        f << fmt_double(sp.eigenvalues(i));
        pooled.push_back(sp.eigenvalues(i));
      }
      f << '\n';
    }
  }
  std::sort(pooled.begin(), pooled.end());
  {
    auto f = open_out(dir / "pooled.csv");
    f << "eigenvalue\n";
    for (double v : pooled) f << fmt_double(v) << '\n';
  }
  if (c.curves) {
    auto fp = open_out(dir / "law_pdf.csv");
    auto fc = open_out(dir / "law_cdf.csv");
    fp << "x,pdf\n";
    fc << "x,cdf\n";
    constexpr int kPoints = 512;
    for (int i = 0; i <= kPoints; ++i) {
      const double x = law.lower() + (law.upper() - law.lower()) * i / kPoints;
      fp << fmt_double(x) << ',' << fmt_double(law.pdf(x)) << '\n';
      fc << fmt_double(x) << ',' << fmt_double(law.cdf(x)) << '\n';
    }
  }

  const auto pooled_summary = summarize_spectrum<double>(Eigen::Map<const Eigen::VectorXd>(pooled.data(), static_cast<Eigen::Index>(pooled.size())));
  const auto ks_stats = describe(ks);
  const double r_bound = source.spec.r ? 1.0 / *source.spec.r : 0.0;
  std::size_t within = 0;
  for (double d : ks) within += (source.spec.r && d <= r_bound) ? 1 : 0;
  json summary = {{"law", law.kind() == LimitLaw::Kind::semicircle ? "semicircle" : "marchenko-pastur"},
                  {"ks", ks},
                  {"ks_mean", ks_stats.mean},
                  {"ks_max", ks_stats.max},
                  {"pooled_ks", ks_distance(pooled_summary, law)}};
  if (source.spec.r) {
    summary["inverse_r"] = r_bound;
    summary["fraction_within_inverse_r"] = static_cast<double>(within) / static_cast<double>(ks.size());
  }
  write_sidecar(dir, c, {{"spec", to_json(source.spec)}, {"summary", summary}});
  json brief = summary;
  brief.erase("ks");
  out << brief.dump(2) << '\n';
  return kSuccess;
}

int cmd_moments(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (c.s_max < 1) fail(Errc::invalid_input, "--s-max must be at least 1");
  const auto source = source_for(c, err);
  const auto dir = require_out_dir(c);
  const auto law = limit_law(source.spec);
  const auto specs = spectra(source, 0, c.count);
  const bool wigner = is_wigner(source.spec.kind);

  auto f = open_out(dir / "moments.csv");
  f << "s,sample_mean,sample_std,standard_error,law_moment";
  if (wigner) f << ",stirling_ratio";
  f << '\n';
  json rows = json::array();
  for (int s = 1; s <= c.s_max; ++s) {
    std::vector<double> values;
    values.reserve(specs.size());
    for (const auto& sp : specs) values.push_back(trace_moment(sp, static_cast<unsigned>(s)));
    const auto st = describe(values);
    const double se = st.count > 0 ? st.stddev / std::sqrt(static_cast<double>(st.count)) : 0.0;
    const double law_m = law.moment(static_cast<unsigned>(s));
    f << s << ',' << fmt_double(st.mean) << ',' << fmt_double(st.stddev) << ',' << fmt_double(se) << ','
      << fmt_double(law_m);
    json row = {{"s", s}, {"sample_mean", st.mean}, {"sample_std", st.stddev}, {"law_moment", law_m}};
    if (wigner) {
      // E[Tr A^s] / (sqrt(8 / (pi s^3)) N), the large-s asymptotic ratio.
      const double ratio = st.mean * std::sqrt(std::numbers::pi * s * s * s / 8.0);
      f << ',' << fmt_double(ratio);
      row["stirling_ratio"] = ratio;
    }
    f << '\n';
    rows.push_back(row);
  }
  write_sidecar(dir, c, {{"spec", to_json(source.spec)}, {"moments", rows}});
  out << rows.dump(2) << '\n';
  return kSuccess;
}

int cmd_verify_indep(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto bch = build_bch(c, err);
  const auto dual = dual_code(bch.code);
  IndependenceMode mode;
  if (c.mode == "exact") mode = IndependenceMode::exact;
  else if (c.mode == "sampled") mode = IndependenceMode::sampled;
  else fail(Errc::invalid_input, "--mode must be exact or sampled");
  const auto report = verify_r_independence(dual, c.r, mode, c.budget, c.seed);
  json j = to_json(report);
  j["code"] = to_json(dual);
  j["guaranteed_r"] = *bch.code.designed_distance() - 1;
  out << j.dump(2) << '\n';
  if (!c.out.empty()) {
    const auto dir = require_out_dir(c);
    write_sidecar(dir, c, {{"report", j}});
  }
  return report.pass ? kSuccess : kVerificationFailed;
}

int dispatch(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "genpoly") return cmd_genpoly(c, out, err);
  if (c.command == "dual") return cmd_dual(c, out, err);
  if (c.command == "sample") return cmd_sample(c, out, err);
  if (c.command == "norms") return cmd_norms(c, out, err);
  if (c.command == "esd") return cmd_esd(c, out, err);
  if (c.command == "moments") return cmd_moments(c, out, err);
  if (c.command == "verify-indep") return cmd_verify_indep(c, out, err);
  fail(Errc::invalid_input, "unknown command '" + c.command + "'");
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::numerical_failure:
    case Errc::arithmetic_corruption:
      return kNumericalFailure;
    default:
      return kInvalidInput;
  }
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  return {{"command", c.command}, {"kind", c.kind},       {"m", c.m},           {"delta", c.delta},
          {"N", c.N},             {"p", c.p},             {"count", c.count},   {"seed", c.seed},
          {"gamma", c.gamma},     {"epsilon", c.epsilon}, {"s_max", c.s_max},   {"r", c.r},
          {"mode", c.mode},       {"budget", c.budget},   {"target_k", c.target_k},
          {"curves", c.curves},   {"out", c.out}};
}

ExperimentConfig config_from_json(const json& j) {
  const json& src = j.contains("config") ? j.at("config") : j;
  ExperimentConfig c;
  auto get = [&](const char* key, auto& field) {
    if (src.contains(key)) field = src.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("command", c.command);
  get("kind", c.kind);
  get("m", c.m);
  get("delta", c.delta);
  get("N", c.N);
  get("p", c.p);
  get("count", c.count);
  get("seed", c.seed);
  get("gamma", c.gamma);
  get("epsilon", c.epsilon);
  get("s_max", c.s_max);
  get("r", c.r);
  get("mode", c.mode);
  get("budget", c.budget);
  get("target_k", c.target_k);
  get("curves", c.curves);
  get("out", c.out);
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-Wigner and pseudo-Marchenko-Pastur ensembles from dual BCH codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PSEUDOSPEC_VERSION));

  ExperimentConfig config;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Replay the config stored in a run.json sidecar");
    sub->add_option("--seed", config.seed, "Base seed");
    sub->add_option("--out", config.out, "Output directory");
  };
  auto add_code = [&](CLI::App* sub) {
    sub->add_option("--m", config.m, "Field degree, n = 2^m - 1");
    sub->add_option("--delta", config.delta, "Designed distance of the BCH code");
  };
  auto add_ensemble = [&](CLI::App* sub) {
    add_code(sub);
    sub->add_option("--kind", config.kind, "pseudo-wigner | pseudo-mp | random-wigner | random-mp");
    sub->add_option("--N", config.N, "Matrix order (rows)");
    sub->add_option("--p", config.p, "Columns for MP kinds (default floor(gamma N))");
    sub->add_option("--gamma", config.gamma, "Aspect ratio p/N for MP kinds");
    sub->add_option("--count", config.count, "Number of samples");
  };

  auto* genpoly = app.add_subcommand("genpoly", "BCH generator polynomial and dual, as JSON");
  genpoly->add_option("m,--m", config.m, "Field degree");
  genpoly->add_option("delta,--delta", config.delta, "Designed distance");
  genpoly->add_option("--k", config.target_k, "Also report the designed distance reaching this dimension");
  add_common(genpoly);

  auto* dual = app.add_subcommand("dual", "Dual code of a BCH code, as JSON");
  dual->add_option("m,--m", config.m, "Field degree");
  dual->add_option("delta,--delta", config.delta, "Designed distance");
  add_common(dual);

  auto* sample = app.add_subcommand("sample", "Seeded uniform dual codewords to a packed binary batch");
  add_code(sample);
  sample->add_option("--count", config.count, "Number of codewords");
  add_common(sample);

  auto* norms = app.add_subcommand("norms", "Spectral norms per sample, summary and histogram");
  add_ensemble(norms);
  norms->add_option("--epsilon", config.epsilon, "Exponent slack in the log^{1+epsilon} N band");
  norms->add_flag("--resume", config.resume, "Continue an interrupted run in --out");
  add_common(norms);

  auto* esd = app.add_subcommand("esd", "Spectra and KS distances to the limit law");
  add_ensemble(esd);
  esd->add_flag("--curves", config.curves, "Also write law pdf/cdf curves");
  add_common(esd);

  auto* moments = app.add_subcommand("moments", "Sample trace moments against the limit law");
  add_ensemble(moments);
  moments->add_option("--s-max", config.s_max, "Highest moment order");
  add_common(moments);

  auto* indep = app.add_subcommand("verify-indep", "Check r-independence of a dual BCH code");
  add_code(indep);
  indep->add_option("--r", config.r, "Independence level to test");
  indep->add_option("--mode", config.mode, "exact | sampled");
  indep->add_option("--budget", config.budget, "Maximum number of coordinate subsets");
  add_common(indep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << PSEUDOSPEC_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as a ParseError with exit code 0.
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  config.command = app.get_subcommands().front()->get_name();

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) fail(Errc::invalid_input, "cannot read config " + config_path);
      const std::string out_override = config.out;
      ExperimentConfig replay = config_from_json(json::parse(in));
      if (replay.command != config.command) {
        fail(Errc::invalid_input, "config was recorded for '" + replay.command + "', not '" + config.command + "'");
      }
      if (!out_override.empty()) replay.out = out_override;
      replay.resume = config.resume;
      config = replay;
    }
    return dispatch(config, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error (invalid-input): " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace pseudospec::cli

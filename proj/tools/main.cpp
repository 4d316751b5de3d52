#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "guefield/chebyshev.hpp"
#include "guefield/field.hpp"
#include "guefield/gue.hpp"
#include "guefield/harness.hpp"
#include "guefield/io.hpp"
#include "guefield/limit.hpp"
#include "guefield/moments.hpp"
#include "guefield/semicircle.hpp"
#include "guefield/stats.hpp"

namespace {

using guefield::ExperimentConfig;
using guefield::SamplerKind;
using nlohmann::ordered_json;

struct OutputTarget {
  std::string path;

  // Payload bytes go to the file or stdout; diagnostics go to stderr.
  template <class Fn>
  void emit(Fn&& fn) const {
    if (path.empty()) {
      fn(std::cout);
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + path);
      fn(out);
    }
  }
};

struct CommonFlags {
  int n = 256;
  int replicas = 2;
  int kmax = 7;
  std::uint64_t seed = 1;
  std::string sampler = "tridiag";
  std::string format = "csv";
  double alpha = 4.0;
  int threads = 0;
  OutputTarget out;
};

void add_output_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out.path, "write the payload to this file instead of stdout");
  cmd->add_option("--format", flags.format, "payload format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig make_config(const CommonFlags& flags) {
  ExperimentConfig config;
  config.n = flags.n;
  config.replicas = flags.replicas;
  config.kmax = flags.kmax;
  config.seed = flags.seed;
  config.sampler = guefield::sampler_from_name(flags.sampler);
  config.alpha = flags.alpha;
  config.threads = flags.threads;
  return config;
}

int run_partition(const CommonFlags& flags) {
  const auto partition = guefield::build_partition(flags.n);
  flags.out.emit([&](std::ostream& out) {
    guefield::write_table(out, guefield::partition_table(partition), flags.format);
  });
  return 0;
}

int run_sample(const CommonFlags& flags) {
  std::vector<guefield::Spectrum> spectra;
  const SamplerKind kind = guefield::sampler_from_name(flags.sampler);
  for (int i = 0; i < flags.replicas; ++i) {
    spectra.push_back(
        guefield::sample_spectrum(kind, flags.n, guefield::replica_seed(flags.seed, i)));
  }
  flags.out.emit([&](std::ostream& out) {
    guefield::write_table(out, guefield::spectra_table(spectra), flags.format);
  });
  return 0;
}

int run_field(const CommonFlags& flags) {
  const SamplerKind kind = guefield::sampler_from_name(flags.sampler);
  const auto spectrum =
      guefield::sample_spectrum(kind, flags.n, guefield::replica_seed(flags.seed, 0));
  auto partition =
      std::make_shared<const guefield::SemicirclePartition>(guefield::build_partition(flags.n));
  const auto field = guefield::build_field(spectrum, partition);
  flags.out.emit([&](std::ostream& out) {
    guefield::write_table(out, guefield::field_table(field), flags.format);
  });
  return 0;
}

int run_coeffs(const CommonFlags& flags) {
  const auto summary = guefield::run_ensemble(make_config(flags));
  std::cerr << "coeffs: n=" << summary.n << " replicas=" << summary.replicas
            << " runtime=" << summary.runtime_seconds << "s\n";
  flags.out.emit([&](std::ostream& out) {
    guefield::write_table(out, guefield::coeffs_table(summary), flags.format);
  });
  return 0;
}

int run_limit(const CommonFlags& flags, const std::vector<double>& grid) {
  guefield::Table table;
  table.kind = "limit";
  table.columns = {"replica", "sobolev_norm"};
  for (double x : grid) table.columns.push_back("eval_at_" + guefield::format_float(x));
  for (int i = 0; i < flags.replicas; ++i) {
    const auto sample =
        guefield::sample_limit(flags.kmax, guefield::replica_seed(flags.seed, i));
    const auto coeffs = guefield::limit_coeffs(sample);
    std::vector<ordered_json> row{i, guefield::sobolev_norm(coeffs, -flags.alpha)};
    for (double x : grid) row.push_back(guefield::limit_eval(sample, x));
    table.rows.push_back(std::move(row));
  }
  flags.out.emit([&](std::ostream& out) { guefield::write_table(out, table, flags.format); });
  return 0;
}

int run_moments(const CommonFlags& flags, int jmax) {
  const auto table = guefield::harer_zagier(jmax, flags.n);
  flags.out.emit([&](std::ostream& out) {
    guefield::write_table(out, guefield::moments_table(table, flags.n), flags.format);
  });
  return 0;
}

struct VerifyOptions {
  std::vector<int> ladder;
  bool with_counting = false;
  std::string coeffs_out;   // per-replica coefficient CSV
  std::string profile_out;  // per-replica deviation CSV
};

// Aggregate verification: statistical suites with fixed bands; exits 0 when
// every suite passes, 2 otherwise.
int run_verify(const CommonFlags& flags, const VerifyOptions& options) {
  ExperimentConfig config = make_config(flags);
  config.with_counting = options.with_counting;
  const std::vector<int>& ladder = options.ladder;
  const bool with_counting = options.with_counting;
  ordered_json suites;
  bool all_pass = true;

  auto record = [&](const std::string& name, bool pass, ordered_json details) {
    details["pass"] = pass;
    suites[name] = details;
    all_pass = all_pass && pass;
    std::cerr << (pass ? "PASS " : "FAIL ") << name << "\n";
  };

  const auto summary = guefield::run_ensemble(config);
  std::cerr << "verify: ensemble runtime " << summary.runtime_seconds << "s\n";

  {
    double lo = 2.0, hi = 0.0;
    for (int k = 0; k <= config.kmax; ++k) {
      const double v = (k + 1) * summary.coeff_var[k];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    record("coefficient_variance", lo >= 0.85 && hi <= 1.15,
           {{"min_normalized_var", lo}, {"max_normalized_var", hi}, {"band", {0.85, 1.15}}});
  }
  {
    double max_corr = 0.0;
    for (int a = 0; a <= config.kmax; ++a) {
      for (int b = a + 1; b <= config.kmax; ++b) {
        const double denom = std::sqrt(summary.coeff_cov(a, a) * summary.coeff_cov(b, b));
        max_corr = std::max(max_corr, std::abs(summary.coeff_cov(a, b)) / denom);
      }
    }
    record("coefficient_correlation", max_corr < 0.1, {{"max_abs_corr", max_corr}});
  }
  {
    const double level = 0.01 / (config.kmax + 1);
    const double min_p = summary.ks_pvalue.minCoeff();
    record("coefficient_gaussianity", min_p >= level,
           {{"min_pvalue", min_p}, {"bonferroni_level", level}});
  }
  {
    bool pass = true;
    ordered_json rows = ordered_json::array();
    for (const auto& stat : guefield::johansson_suite(config, {1, 2, 3})) {
      const double ratio = stat.second_moment / stat.theory;
      pass = pass && ratio >= 0.9 && ratio <= 1.1;
      rows.push_back({{"degree", stat.degree},
                      {"second_moment", stat.second_moment},
                      {"theory", stat.theory},
                      {"ratio", ratio}});
    }
    // Total eigenvalue sum has variance exactly 1/4 at every n.
    const double var1 = guefield::sample_variance(summary.t_traces.col(0));
    const double se = 0.25 * std::sqrt(2.0 / (summary.replicas - 1));
    pass = pass && std::abs(var1 - 0.25) <= 3.0 * se;
    record("johansson", pass, {{"degrees", rows}, {"sum_var", var1}, {"sum_var_tol", 3.0 * se}});
  }
  {
    bool pass = true;
    ordered_json rows = ordered_json::array();
    for (const auto& entry : summary.kernel) {
      const double tol = std::max(3.0 * entry.std_error, 0.2 * std::abs(entry.closed));
      const bool ok = std::abs(entry.empirical - entry.closed) <= tol;
      pass = pass && ok;
      rows.push_back({{"x", entry.x},
                      {"y", entry.y},
                      {"empirical", entry.empirical},
                      {"closed", entry.closed},
                      {"tolerance", tol}});
    }
    record("kernel", pass, {{"pairs", rows}});
  }
  {
    bool pass = true;
    ordered_json rows = ordered_json::array();
    const int replicas = std::min(config.replicas, 500);
    for (int n : {8, 16, 32, 64}) {
      Eigen::VectorXd dense(n * replicas), tridiag(n * replicas);
      for (int i = 0; i < replicas; ++i) {
        const auto a = guefield::sample_dense(n, guefield::replica_seed(config.seed ^ 0x5eed, i));
        const auto b =
            guefield::sample_tridiag(n, guefield::replica_seed(config.seed ^ 0x7131, i));
        dense.segment(i * n, n) = a.lambda;
        tridiag.segment(i * n, n) = b.lambda;
      }
      const auto ks = guefield::ks_two_sample(dense, tridiag);
      pass = pass && ks.pvalue >= 0.01;
      rows.push_back({{"n", n}, {"ks_stat", ks.statistic}, {"pvalue", ks.pvalue}});
    }
    record("sampler_equivalence", pass, {{"sizes", rows}});
  }
  {
    bool pass = true;
    ordered_json spacing = ordered_json::array();
    double base2 = 0.0, base3 = 0.0;
    for (int n : {64, 128, 256, 512, 1024}) {
      const auto partition = guefield::build_partition(n);
      double s2 = 0.0, s3 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = partition.gamma[j + 1] - partition.gamma[j];
        s2 += d * d;
        s3 += d * d * d;
      }
      s2 *= n;
      s3 *= static_cast<double>(n) * n;
      if (n == 64) {
        base2 = s2;
        base3 = s3;
      }
      pass = pass && s2 <= 2.0 * base2 && s3 <= 2.0 * base3;
      spacing.push_back({{"n", n}, {"p2", s2}, {"p3", s3}});
    }
    double max_err = 0.0;
    for (int i = -999; i <= 999; i += 3) {
      const double x = i / 1000.0;
      max_err = std::max(max_err,
                         std::abs(guefield::semicircle_quantile(guefield::semicircle_cdf(x)) - x));
    }
    pass = pass && max_err <= 1e-9;
    record("partition", pass, {{"spacing", spacing}, {"quantile_roundtrip_err", max_err}});
  }
  if (!ladder.empty()) {
    const auto rigidity = guefield::rigidity_profile(config, ladder);
    ordered_json points = ordered_json::array();
    for (const auto& point : rigidity.points) {
      points.push_back({{"n", point.n}, {"bulk_var", point.bulk_var}, {"edge_var", point.edge_var}});
    }
    record("rigidity", rigidity.bulk_slope >= -2.2 && rigidity.bulk_slope <= -1.8,
           {{"slope", rigidity.bulk_slope}, {"points", points}});
  }
  if (with_counting) {
    std::vector<int> sizes;
    for (int n : {config.n / 4, config.n / 2, config.n}) {
      if (n >= 32 && (sizes.empty() || n > sizes.back())) sizes.push_back(n);
    }
    ordered_json rows = ordered_json::array();
    double prev = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      ExperimentConfig local = config;
      local.n = sizes[i];
      const auto local_summary = guefield::run_ensemble(local);
      rows.push_back({{"n", sizes[i]}, {"median_distance", local_summary.proximity_median}});
      if (i > 0) pass = pass && local_summary.proximity_median < prev;
      prev = local_summary.proximity_median;
    }
    record("counting_proximity", pass, {{"sizes", rows}});
  }

  ordered_json payload = guefield::summary_to_json(summary);
  payload["suites"] = suites;
  payload["pass"] = all_pass;
  flags.out.emit([&](std::ostream& out) { out << payload.dump(2) << '\n'; });
  if (!options.coeffs_out.empty()) {
    std::ofstream out(options.coeffs_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + options.coeffs_out);
    guefield::write_csv(out, guefield::coeffs_table(summary));
  }
  if (!options.profile_out.empty()) {
    std::ofstream out(options.profile_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + options.profile_out);
    guefield::write_csv(out, guefield::profile_table(summary));
  }
  return all_pass ? 0 : 2;
}

// Seed config values from a JSON file; explicitly passed flags still win.
void apply_config_file(const std::string& path, const CLI::App* verify, CommonFlags& flags,
                       VerifyOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ordered_json doc = ordered_json::parse(in);
  auto keep = [&](const char* flag) { return verify->count(flag) == 0; };
  if (doc.contains("n") && keep("--n")) flags.n = doc["n"].get<int>();
  if (doc.contains("replicas") && keep("--replicas")) flags.replicas = doc["replicas"].get<int>();
  if (doc.contains("kmax") && keep("--kmax")) flags.kmax = doc["kmax"].get<int>();
  if (doc.contains("sampler") && keep("--sampler")) flags.sampler = doc["sampler"].get<std::string>();
  if (doc.contains("alpha") && keep("--alpha")) flags.alpha = doc["alpha"].get<double>();
  if (doc.contains("threads") && keep("--threads")) flags.threads = doc["threads"].get<int>();
  if (doc.contains("ladder") && keep("--ladder")) options.ladder = doc["ladder"].get<std::vector<int>>();
  if (doc.contains("with_counting") && keep("--with-counting")) {
    options.with_counting = doc["with_counting"].get<bool>();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral fluctuation toolkit for the Gaussian unitary ensemble"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<double> grid = {-0.5, 0.0, 0.5};
  VerifyOptions verify_options;
  std::string config_path;
  int jmax = 8;

  auto* partition = app.add_subcommand("partition", "classical-location partition dump");
  partition->add_option("--n", flags.n, "matrix size")->required();
  add_output_flags(partition, flags);

  auto* sample = app.add_subcommand("sample", "eigenvalue draws");
  sample->add_option("--n", flags.n, "matrix size")->required();
  sample->add_option("--replicas", flags.replicas, "number of draws");
  sample->add_option("--seed", flags.seed, "master seed");
  sample->add_option("--sampler", flags.sampler, "dense|tridiag")
      ->check(CLI::IsMember({"dense", "tridiag"}));
  add_output_flags(sample, flags);

  auto* field = app.add_subcommand("field", "fluctuation-field snapshot for one draw");
  field->add_option("--n", flags.n, "matrix size")->required();
  field->add_option("--seed", flags.seed, "master seed");
  field->add_option("--sampler", flags.sampler, "dense|tridiag")
      ->check(CLI::IsMember({"dense", "tridiag"}));
  add_output_flags(field, flags);

  auto* coeffs = app.add_subcommand("coeffs", "per-replica field coefficients");
  coeffs->add_option("--n", flags.n, "matrix size")->required();
  coeffs->add_option("--replicas", flags.replicas, "ensemble size");
  coeffs->add_option("--kmax", flags.kmax, "highest coefficient index");
  coeffs->add_option("--seed", flags.seed, "master seed");
  coeffs->add_option("--sampler", flags.sampler, "dense|tridiag")
      ->check(CLI::IsMember({"dense", "tridiag"}));
  coeffs->add_option("--threads", flags.threads, "worker threads (0 = auto)");
  add_output_flags(coeffs, flags);

  auto* limit = app.add_subcommand("limit", "limiting-field samples");
  limit->add_option("--kmax", flags.kmax, "series truncation")->required();
  limit->add_option("--replicas", flags.replicas, "number of samples");
  limit->add_option("--seed", flags.seed, "master seed");
  limit->add_option("--alpha", flags.alpha, "Sobolev index (-alpha space)");
  limit->add_option("--grid", grid, "evaluation points")->expected(-1);
  add_output_flags(limit, flags);

  auto* moments = app.add_subcommand("moments", "finite-size moment table");
  moments->add_option("--n", flags.n, "matrix size")->required();
  moments->add_option("--jmax", jmax, "highest moment order");
  add_output_flags(moments, flags);

  auto* verify = app.add_subcommand("verify", "statistical verification suites");
  verify->add_option("--n", flags.n, "matrix size");
  verify->add_option("--replicas", flags.replicas, "ensemble size");
  verify->add_option("--kmax", flags.kmax, "highest coefficient index");
  verify->add_option("--seed", flags.seed, "master seed (required; runs must be reproducible)")
      ->required();
  verify->add_option("--sampler", flags.sampler, "dense|tridiag")
      ->check(CLI::IsMember({"dense", "tridiag"}));
  verify->add_option("--alpha", flags.alpha, "Sobolev index (-alpha space)");
  verify->add_option("--threads", flags.threads, "worker threads (0 = auto)");
  verify->add_option("--ladder", verify_options.ladder, "sizes for the rigidity suite")->expected(-1);
  verify->add_flag("--with-counting", verify_options.with_counting,
                   "run the counting-coefficient proximity suite");
  verify->add_option("--config", config_path, "JSON config file; explicit flags win");
  verify->add_option("--coeffs-out", verify_options.coeffs_out,
                     "also dump per-replica coefficients as CSV");
  verify->add_option("--profile-out", verify_options.profile_out,
                     "also dump per-replica eigenvalue deviations as CSV");
  add_output_flags(verify, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (verify->parsed()) {
      if (!verify->count("--n")) flags.n = 512;
      if (!verify->count("--replicas")) flags.replicas = 2000;
      if (!config_path.empty()) apply_config_file(config_path, verify, flags, verify_options);
      return run_verify(flags, verify_options);
    }
    if (partition->parsed()) return run_partition(flags);
    if (sample->parsed()) return run_sample(flags);
    if (field->parsed()) return run_field(flags);
    if (coeffs->parsed()) return run_coeffs(flags);
    if (limit->parsed()) return run_limit(flags, grid);
    if (moments->parsed()) return run_moments(flags, jmax);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

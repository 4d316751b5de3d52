#include "guefield/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "guefield/chebyshev.hpp"
#include "guefield/limit.hpp"
#include "guefield/moments.hpp"
#include "guefield/stats.hpp"

namespace guefield {

namespace {

void validate(const ExperimentConfig& config) {
  if (config.n < 1) throw std::invalid_argument("harness: n must be positive");
  if (config.replicas < 2) throw std::invalid_argument("harness: need at least two replicas");
  if (config.kmax < 0) throw std::invalid_argument("harness: kmax must be nonnegative");
  if (!(config.alpha > 0.0)) throw std::invalid_argument("harness: alpha must be positive");
  for (double x : config.grid) {
    if (!(x > -1.0 && x < 1.0)) throw std::invalid_argument("harness: grid point outside (-1, 1)");
  }
}

std::vector<int> profile_or_default(const ExperimentConfig& config) {
  std::vector<int> indices =
      config.profile_indices.empty() ? default_profile_indices(config.n) : config.profile_indices;
  for (int j : indices) {
    if (j < 1 || j > config.n) throw std::invalid_argument("harness: profile index out of range");
  }
  return indices;
}

int thread_count(const ExperimentConfig& config, int replicas) {
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  return std::min(threads, replicas);
}

double median_of(Eigen::VectorXd values) {
  std::sort(values.data(), values.data() + values.size());
  const int m = static_cast<int>(values.size());
  return m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

}  // namespace

std::vector<int> default_profile_indices(int n) {
  std::vector<int> indices;
  for (int j : {static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))),
                n / 4, n / 2, 3 * n / 4}) {
    if (j >= 1 && j <= n && (indices.empty() || indices.back() != j)) indices.push_back(j);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (indices.empty()) indices.push_back(1);
  return indices;
}

std::vector<ReplicaResult> run_replicas(const ExperimentConfig& config, int begin, int end) {
  validate(config);
  const std::vector<int> profile = profile_or_default(config);
  auto partition = std::make_shared<const SemicirclePartition>(build_partition(config.n));
  const double pi = std::numbers::pi;

  std::vector<ReplicaResult> rows;
  rows.reserve(std::max(end - begin, 0));
  for (int i = begin; i < end; ++i) {
    const Spectrum spectrum =
        sample_spectrum(config.sampler, config.n, replica_seed(config.seed, i));
    const FluctuationField field = build_field(spectrum, partition);

    ReplicaResult row;
    row.pi_coeffs = pi * field_coeffs(field, config.kmax);

    row.deviations.resize(profile.size());
    for (std::size_t p = 0; p < profile.size(); ++p) {
      const int j = profile[p];
      row.deviations[p] = spectrum.lambda[j - 1] - partition->gamma[j];
    }

    row.field_values.resize(config.grid.size());
    for (std::size_t g = 0; g < config.grid.size(); ++g) {
      row.field_values[g] = field_eval(field, config.grid[g]);
    }

    row.t_traces.resize(3);
    for (int m = 1; m <= 3; ++m) {
      double trace = 0.0;
      for (int j = 0; j < config.n; ++j) trace += t_eval(m, spectrum.lambda[j]);
      row.t_traces[m - 1] = trace;
    }

    if (config.with_counting) {
      row.counting_pi = pi * counting_coeffs(spectrum, config.counting_kmax);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

EnsembleSummary summarize(const ExperimentConfig& config, const std::vector<ReplicaResult>& rows) {
  validate(config);
  const int m = static_cast<int>(rows.size());
  if (m < 2) throw std::invalid_argument("summarize: need at least two replicas");
  const std::vector<int> profile = profile_or_default(config);

  EnsembleSummary s;
  s.n = config.n;
  s.replicas = m;
  s.kmax = config.kmax;
  s.seed = config.seed;
  s.sampler = config.sampler;
  s.alpha = config.alpha;
  s.grid = config.grid;
  s.profile_indices = profile;
  s.counting_kmax = config.with_counting ? config.counting_kmax : 0;

  const int k_cols = config.kmax + 1;
  s.pi_coeffs.resize(m, k_cols);
  s.deviations.resize(m, profile.size());
  s.field_values.resize(m, config.grid.size());
  s.t_traces.resize(m, 3);
  if (config.with_counting) s.counting_pi.resize(m, config.counting_kmax + 1);
  for (int i = 0; i < m; ++i) {
    s.pi_coeffs.row(i) = rows[i].pi_coeffs.transpose();
    s.deviations.row(i) = rows[i].deviations.transpose();
    s.field_values.row(i) = rows[i].field_values.transpose();
    s.t_traces.row(i) = rows[i].t_traces.transpose();
    if (config.with_counting) s.counting_pi.row(i) = rows[i].counting_pi.transpose();
  }

  s.coeff_mean = s.pi_coeffs.colwise().mean().transpose();
  s.coeff_cov = sample_covariance(s.pi_coeffs);
  s.coeff_var = s.coeff_cov.diagonal();

  s.ks_stat.resize(k_cols);
  s.ks_pvalue.resize(k_cols);
  for (int k = 0; k < k_cols; ++k) {
    const Eigen::VectorXd z = s.pi_coeffs.col(k) * std::sqrt(k + 1.0);
    const KsResult ks = ks_test_normal(z);
    s.ks_stat[k] = ks.statistic;
    s.ks_pvalue[k] = ks.pvalue;
  }

  s.profile_var.resize(profile.size());
  for (std::size_t p = 0; p < profile.size(); ++p) {
    s.profile_var[p] = sample_variance(s.deviations.col(p));
  }

  for (int degree = 1; degree <= 3; ++degree) {
    LinearStatistic stat;
    stat.degree = degree;
    stat.theory = degree / 4.0;
    const double center = expected_t_trace(degree, config.n);
    stat.second_moment = (s.t_traces.col(degree - 1).array() - center).square().mean();
    s.linear_stats.push_back(stat);
  }

  const double pi = std::numbers::pi;
  const int g = static_cast<int>(config.grid.size());
  for (int a = 0; a < g; ++a) {
    for (int b = a + 1; b < g; ++b) {
      KernelEntry entry;
      entry.x = config.grid[a];
      entry.y = config.grid[b];
      entry.closed = kernel_closed(entry.x, entry.y);
      const Eigen::ArrayXd u = pi * s.field_values.col(a).array();
      const Eigen::ArrayXd v = pi * s.field_values.col(b).array();
      const Eigen::ArrayXd products = (u - u.mean()) * (v - v.mean());
      entry.empirical = products.sum() / (m - 1);
      const double product_mean = products.mean();
      entry.std_error =
          std::sqrt((products - product_mean).square().sum() / (m - 1) / m);
      s.kernel.push_back(entry);
    }
  }

  double norm_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    norm_sum += sobolev_norm(s.pi_coeffs.row(i).transpose(), -config.alpha);
  }
  s.sobolev_mean = norm_sum / m;

  if (config.with_counting) {
    const int trunc = std::min(config.kmax, config.counting_kmax) + 1;
    // Both sequences get the pooled-mean centering. The counting side needs
    // it (the raw coefficients carry a large deterministic part), and
    // centering only one side would leave the shared O(1/sqrt(replicas))
    // error of the pooled mean inside every replica's distance, a floor that
    // no matrix size can cross.
    const Eigen::RowVectorXd counting_mean = s.counting_pi.colwise().mean();
    const Eigen::RowVectorXd field_mean = s.pi_coeffs.colwise().mean();
    s.proximity_distance.resize(m);
    for (int i = 0; i < m; ++i) {
      const Eigen::RowVectorXd diff =
          (s.pi_coeffs.row(i) - field_mean).head(trunc) -
          (s.counting_pi.row(i) - counting_mean).head(trunc);
      s.proximity_distance[i] = sobolev_norm(diff.transpose(), -config.alpha);
    }
    s.proximity_median = median_of(s.proximity_distance);
  }
  return s;
}

EnsembleSummary run_ensemble(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const int m = config.replicas;
  const int threads = thread_count(config, m);

  std::vector<std::vector<ReplicaResult>> chunks(threads);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  const int base = m / threads, extra = m % threads;
  int begin = 0;
  for (int t = 0; t < threads; ++t) {
    const int len = base + (t < extra ? 1 : 0);
    const int end = begin + len;
    workers.emplace_back([&, t, begin, end] {
      try {
        chunks[t] = run_replicas(config, begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& worker : workers) worker.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  std::vector<ReplicaResult> rows;
  rows.reserve(m);
  for (auto& chunk : chunks) {
    for (auto& row : chunk) rows.push_back(std::move(row));
  }
  EnsembleSummary summary = summarize(config, rows);
  summary.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

std::vector<LinearStatistic> johansson_suite(const ExperimentConfig& config,
                                             const std::vector<int>& degrees) {
  validate(config);
  std::vector<double> centers;
  for (int degree : degrees) {
    if (degree < 1) throw std::invalid_argument("johansson_suite: degree must be positive");
    centers.push_back(expected_t_trace(degree, config.n));
  }
  Eigen::MatrixXd traces(config.replicas, degrees.size());
  for (int i = 0; i < config.replicas; ++i) {
    const Spectrum spectrum =
        sample_spectrum(config.sampler, config.n, replica_seed(config.seed, i));
    for (std::size_t d = 0; d < degrees.size(); ++d) {
      double trace = 0.0;
      for (int j = 0; j < config.n; ++j) trace += t_eval(degrees[d], spectrum.lambda[j]);
      traces(i, d) = trace;
    }
  }
  std::vector<LinearStatistic> stats;
  for (std::size_t d = 0; d < degrees.size(); ++d) {
    LinearStatistic stat;
    stat.degree = degrees[d];
    stat.theory = degrees[d] / 4.0;
    stat.second_moment = (traces.col(d).array() - centers[d]).square().mean();
    stats.push_back(stat);
  }
  return stats;
}

LinearStatistic johansson_check(const ExperimentConfig& config, int degree) {
  return johansson_suite(config, {degree})[0];
}

RigidityResult rigidity_profile(const ExperimentConfig& config, const std::vector<int>& ladder) {
  if (ladder.size() < 4) throw std::invalid_argument("rigidity_profile: ladder needs at least four sizes");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) throw std::invalid_argument("rigidity_profile: ladder must ascend");
  }
  RigidityResult result;
  Eigen::VectorXd log_n(ladder.size()), log_var(ladder.size());
  for (std::size_t s = 0; s < ladder.size(); ++s) {
    ExperimentConfig local = config;
    local.n = ladder[s];
    local.profile_indices = {static_cast<int>(std::floor(std::sqrt(static_cast<double>(local.n)))),
                             local.n / 2};
    const EnsembleSummary summary = run_ensemble(local);
    RigidityPoint point;
    point.n = local.n;
    point.edge_var = summary.profile_var[0];
    point.bulk_var = summary.profile_var[1];
    result.points.push_back(point);
    log_n[s] = std::log(static_cast<double>(point.n));
    log_var[s] = std::log(point.bulk_var);
  }
  result.bulk_slope = ls_slope(log_n, log_var);
  return result;
}

std::vector<KernelEntry> kernel_comparison(const ExperimentConfig& config) {
  return run_ensemble(config).kernel;
}

}  // namespace guefield

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "guefield/field.hpp"
#include "guefield/gue.hpp"

namespace guefield {

struct ExperimentConfig {
  int n = 256;
  int replicas = 500;
  int kmax = 7;
  std::uint64_t seed = 1;
  SamplerKind sampler = SamplerKind::tridiag;
  double alpha = 4.0;                          // report norms in the index -alpha space
  std::vector<double> grid = {-0.5, 0.0, 0.5};  // field evaluation points
  std::vector<int> profile_indices;            // 1-based order statistics; default sqrt(n), n/4, n/2, 3n/4
  bool with_counting = false;                  // also extract counting-function coefficients
  int counting_kmax = 16;
  int threads = 0;                             // 0 = hardware concurrency
};

// Everything computed from a single spectrum draw. Replica i is seeded by
// replica_seed(config.seed, i), so any partition of the index range into
// chunks (or threads) reproduces the same rows.
struct ReplicaResult {
  Eigen::VectorXd pi_coeffs;    // pi s_k, k = 0..kmax
  Eigen::VectorXd deviations;   // lambda_j - gamma_j at the profile indices
  Eigen::VectorXd field_values; // X(x) on the grid
  Eigen::VectorXd t_traces;     // sum T_m(lambda), m = 1..3
  Eigen::VectorXd counting_pi;  // pi-scaled counting coefficients (optional)
};

struct LinearStatistic {
  int degree = 0;
  double second_moment = 0.0;  // empirical E (L_m - E L_m)^2, exact centering
  double theory = 0.0;         // m / 4
};

struct KernelEntry {
  double x = 0.0, y = 0.0;
  double empirical = 0.0;  // sample Cov(pi X(x), pi X(y))
  double closed = 0.0;
  double std_error = 0.0;
};

struct EnsembleSummary {
  int n = 0, replicas = 0, kmax = 0;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::tridiag;
  double alpha = 4.0;
  std::vector<double> grid;
  std::vector<int> profile_indices;
  int counting_kmax = 0;

  // retained per-replica rows, replica-major
  Eigen::MatrixXd pi_coeffs;
  Eigen::MatrixXd deviations;
  Eigen::MatrixXd field_values;
  Eigen::MatrixXd t_traces;
  Eigen::MatrixXd counting_pi;

  // reductions
  Eigen::VectorXd coeff_mean;   // of pi s_k
  Eigen::VectorXd coeff_var;
  Eigen::MatrixXd coeff_cov;
  Eigen::VectorXd ks_stat;      // z = pi s_k sqrt(k+1) against the standard normal
  Eigen::VectorXd ks_pvalue;
  Eigen::VectorXd profile_var;
  std::vector<LinearStatistic> linear_stats;
  std::vector<KernelEntry> kernel;
  double sobolev_mean = 0.0;

  // per-replica Sobolev distance between the fluctuation-field coefficients
  // and the ensemble-centered counting-function coefficients (both pi-scaled,
  // truncated to min(kmax, counting_kmax)); filled when with_counting is set
  Eigen::VectorXd proximity_distance;
  double proximity_median = 0.0;

  double runtime_seconds = 0.0;  // not serialized; outputs stay byte-stable
};

std::vector<int> default_profile_indices(int n);

// Compute replicas [begin, end) sequentially.
std::vector<ReplicaResult> run_replicas(const ExperimentConfig& config, int begin, int end);

// Deterministic reduction of per-replica rows. The result depends only on
// the concatenated rows, so merging chunk results in index order is exact.
EnsembleSummary summarize(const ExperimentConfig& config, const std::vector<ReplicaResult>& rows);

// Parallel driver: splits the replica range over threads, reassembles in
// index order, then summarizes. Bitwise-identical output for any thread
// count.
EnsembleSummary run_ensemble(const ExperimentConfig& config);

std::vector<LinearStatistic> johansson_suite(const ExperimentConfig& config,
                                             const std::vector<int>& degrees);
LinearStatistic johansson_check(const ExperimentConfig& config, int degree);

struct RigidityPoint {
  int n = 0;
  double bulk_var = 0.0;  // Var(lambda_{n/2} - gamma_{n/2})
  double edge_var = 0.0;  // Var(lambda_j - gamma_j) at j = floor(sqrt(n))
};

struct RigidityResult {
  std::vector<RigidityPoint> points;
  double bulk_slope = 0.0;  // least-squares slope of log bulk_var vs log n
};

// Runs the configured replica count at every ladder size (at least two
// sizes, ascending) and fits the bulk variance decay.
RigidityResult rigidity_profile(const ExperimentConfig& config, const std::vector<int>& ladder);

std::vector<KernelEntry> kernel_comparison(const ExperimentConfig& config);

}  // namespace guefield

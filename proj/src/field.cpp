#include "guefield/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace guefield {

namespace {

// Accumulates sum_p v_p * (T_{k+1}(b_{p+1}) - T_{k+1}(b_p)) / (k+1) for all
// k = 0..kmax over the pieces of a piecewise-constant function, then applies
// the 2/pi normalization. Runs the T recurrence along the breakpoints.
Eigen::VectorXd telescoped_coeffs(const Eigen::VectorXd& breaks,
                                  const Eigen::VectorXd& values, int kmax) {
  const int pieces = static_cast<int>(values.size());
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(kmax + 1);
  Eigen::VectorXd t_prev = Eigen::VectorXd::Ones(pieces + 1);  // T_0
  Eigen::VectorXd t_curr = breaks;                             // T_1
  for (int k = 0; k <= kmax; ++k) {
    // t_next = T_{k+2}, t_curr = T_{k+1} at the breakpoints.
    Eigen::VectorXd t_next = 2.0 * breaks.cwiseProduct(t_curr) - t_prev;
    double sum = 0.0;
    for (int p = 0; p < pieces; ++p) sum += values[p] * (t_curr[p + 1] - t_curr[p]);
    coeffs[k] = 2.0 / std::numbers::pi * sum / (k + 1);
    t_prev = t_curr;
    t_curr = t_next;
  }
  return coeffs;
}

}  // namespace

FluctuationField build_field(const Spectrum& spectrum,
                             std::shared_ptr<const SemicirclePartition> partition) {
  if (!partition) throw std::invalid_argument("build_field: null partition");
  if (partition->n != spectrum.n) throw std::invalid_argument("build_field: partition size mismatch");
  const int n = spectrum.n;

  FluctuationField field;
  field.partition = std::move(partition);
  field.values.resize(n);
  for (int j = 0; j < n; ++j) {
    field.values[j] = n * field.partition->cell_density[j + 1] *
                      (spectrum.lambda[j] - field.partition->cell_mean[j]);
  }
  field.seed = spectrum.seed;
  field.sampler = spectrum.sampler;
  return field;
}

double field_eval(const FluctuationField& field, double x) {
  if (!(x > -1.0 && x <= 1.0)) throw std::domain_error("field_eval: x outside (-1, 1]");
  const Eigen::VectorXd& gamma = field.partition->gamma;
  // Cell j is (gamma[j], gamma[j+1]]; lower_bound on the interior nodes
  // gives the first j with x <= gamma[j+1].
  const double* begin = gamma.data() + 1;
  const double* end = gamma.data() + gamma.size();
  int j = static_cast<int>(std::lower_bound(begin, end, x) - begin);
  j = std::min(j, field.partition->n - 1);
  return field.values[j];
}

Eigen::VectorXd field_coeffs(const FluctuationField& field, int kmax) {
  if (kmax < 0) throw std::invalid_argument("field_coeffs: kmax must be nonnegative");
  return telescoped_coeffs(field.partition->gamma, field.values, kmax);
}

CountingField build_counting_field(const Spectrum& spectrum, const Eigen::VectorXd& grid,
                                   Centering centering,
                                   const Eigen::VectorXd* center_table) {
  const int g = static_cast<int>(grid.size());
  for (int i = 0; i < g; ++i) {
    if (!(grid[i] > -1.0 && grid[i] < 1.0)) throw std::domain_error("build_counting_field: grid point outside (-1, 1)");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("build_counting_field: grid not strictly increasing");
  }

  CountingField field;
  field.grid = grid;
  field.centering = centering;
  field.raw_counts.resize(g);
  for (int i = 0; i < g; ++i) field.raw_counts[i] = counting_function(spectrum, grid[i]);

  if (centering == Centering::semicircle) {
    Eigen::VectorXd center(g);
    for (int i = 0; i < g; ++i) center[i] = spectrum.n * semicircle_cdf(grid[i]);
    field.centered_values = field.raw_counts - center;
  } else {
    if (center_table == nullptr || center_table->size() != g) {
      throw std::invalid_argument("build_counting_field: ensemble-mean centering needs a table matching the grid");
    }
    field.centered_values = field.raw_counts - *center_table;
  }
  return field;
}

Eigen::VectorXd counting_coeffs(const Spectrum& spectrum, int kmax) {
  if (kmax < 0) throw std::invalid_argument("counting_coeffs: kmax must be nonnegative");
  // Breakpoints: -1, the eigenvalues inside (-1, 1), then 1. Each piece
  // carries the height n - #{lambda_j < x}, i.e. the number of eigenvalues at
  // or to the right of the piece.
  std::vector<double> breaks{-1.0};
  std::vector<double> values;
  int count = 0;
  for (int j = 0; j < spectrum.n; ++j) {
    const double lam = spectrum.lambda[j];
    if (lam <= -1.0) {
      ++count;
      continue;
    }
    if (lam >= 1.0) break;
    values.push_back(spectrum.n - count);
    breaks.push_back(lam);
    ++count;
  }
  values.push_back(spectrum.n - count);
  breaks.push_back(1.0);

  Eigen::Map<const Eigen::VectorXd> b(breaks.data(), breaks.size());
  Eigen::Map<const Eigen::VectorXd> v(values.data(), values.size());
  return telescoped_coeffs(b, v, kmax);
}

}  // namespace guefield

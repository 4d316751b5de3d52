#include "guefield/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace guefield {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_statistic(const Eigen::VectorXd& sample, const std::function<double(double)>& cdf) {
  const int n = static_cast<int>(sample.size());
  if (n == 0) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> sorted(sample.data(), sample.data() + n);
  std::sort(sorted.begin(), sorted.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double ks_pvalue(double d, double effective_n) {
  if (effective_n <= 0.0) throw std::invalid_argument("ks_pvalue: effective sample size must be positive");
  const double root = std::sqrt(effective_n);
  const double lambda = d * (root + 0.12 + 0.11 / root);
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_test(const Eigen::VectorXd& sample, const std::function<double(double)>& cdf) {
  KsResult result;
  result.statistic = ks_statistic(sample, cdf);
  result.pvalue = ks_pvalue(result.statistic, static_cast<double>(sample.size()));
  return result;
}

KsResult ks_test_normal(const Eigen::VectorXd& sample) {
  return ks_test(sample, [](double x) { return normal_cdf(x); });
}

KsResult ks_two_sample(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(b.size());
  if (m == 0 || n == 0) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> sa(a.data(), a.data() + m), sb(b.data(), b.data() + n);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }
  KsResult result;
  result.statistic = d;
  result.pvalue = ks_pvalue(d, static_cast<double>(m) * n / (m + n));
  return result;
}

double sample_mean(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw std::invalid_argument("sample_mean: empty sample");
  return v.mean();
}

double sample_variance(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  if (n < 2) throw std::invalid_argument("sample_variance: need at least two points");
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / (n - 1);
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& rows) {
  const int m = static_cast<int>(rows.rows());
  if (m < 2) throw std::invalid_argument("sample_covariance: need at least two replicas");
  const Eigen::RowVectorXd mean = rows.colwise().mean();
  const Eigen::MatrixXd centered = rows.rowwise() - mean;
  return centered.transpose() * centered / (m - 1);
}

double ls_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ls_slope: size mismatch");
  const double mx = x.mean(), my = y.mean();
  const double sxx = (x.array() - mx).square().sum();
  if (sxx == 0.0) throw std::invalid_argument("ls_slope: degenerate abscissae");
  return (x.array() - mx).cwiseProduct(y.array() - my).sum() / sxx;
}

}  // namespace guefield

#pragma once

#include <functional>

#include <Eigen/Core>

namespace guefield {

double normal_cdf(double x);

struct KsResult {
  double statistic = 0.0;
  double pvalue = 1.0;
};

// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_statistic(const Eigen::VectorXd& sample, const std::function<double(double)>& cdf);

// Asymptotic KS p-value with the Stephens small-sample correction
// lambda = d (sqrt(n) + 0.12 + 0.11 / sqrt(n)).
double ks_pvalue(double d, double effective_n);

KsResult ks_test(const Eigen::VectorXd& sample, const std::function<double(double)>& cdf);
KsResult ks_test_normal(const Eigen::VectorXd& sample);
KsResult ks_two_sample(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

double sample_mean(const Eigen::VectorXd& v);
double sample_variance(const Eigen::VectorXd& v);  // unbiased, n-1

// Covariance matrix of rows-as-replicas data, unbiased normalization.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& rows);

// Least-squares slope of y against x.
double ls_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace guefield

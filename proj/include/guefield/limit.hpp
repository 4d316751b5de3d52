#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace guefield {

// Sample of the limiting Gaussian field, stored through its independent
// standard normal amplitudes y_0..y_kmax; the coefficient sequence is
// s_k = y_k / sqrt(k + 1).
struct LimitSample {
  Eigen::VectorXd y;
  std::uint64_t seed = 0;
};

LimitSample sample_limit(int kmax, std::uint64_t seed);

Eigen::VectorXd limit_coeffs(const LimitSample& sample);

// Pointwise evaluation sum_k s_k U_k(x) sqrt(1 - x^2) of the truncated
// series; grows like sqrt(log kmax) in variance at fixed x.
double limit_eval(const LimitSample& sample, double x);

// Covariance kernel of the limit field in closed form:
//   C(x, y) = -(1/2) log( |x - y| / (1 - x y + sqrt(1-x^2) sqrt(1-y^2)) ).
// With x = cos a, y = cos b the series below is
//   sum_{m>=1} sin(m a) sin(m b) / m
//   = (1/2) sum_{m>=1} (cos m(a-b) - cos m(a+b)) / m,
// and sum cos(m d)/m = -log(2 |sin(d/2)|), which yields the closed form.
// Requires |x|, |y| < 1 and x != y (logarithmic singularity on the diagonal).
double kernel_closed(double x, double y);

// Truncated series sum_{k=0}^{K} U_k(x) U_k(y) sqrt(1-x^2) sqrt(1-y^2) / (k+1).
double kernel_series(double x, double y, int terms);

// Bound on the truncation error of kernel_series: writing x = cos a and
// y = cos b, the tail of each cosine series sum cos(k d)/k is at most
// 1 / (m |sin(d/2)|) beyond index m by the Abel summation bound, applied to
// d = a - b and d = a + b.
double kernel_tail_bound(double x, double y, int terms);

// Smallest truncation whose tail bound is below tol.
int terms_for_tolerance(double x, double y, double tol);

// Covariance of the limit field; identical to kernel_closed.
double limit_cov(double x, double y);

// Norm in the Sobolev space of index alpha:
//   sqrt( sum_k s_k^2 (1 + k^2)^alpha ).
// Pass a negative alpha for the generalized-function spaces the limit field
// lives in.
double sobolev_norm(const Eigen::VectorXd& coeffs, double alpha);

// E ||.||^2 in index -alpha for the limit field truncated at kmax:
//   sum_{k <= kmax} (1+k^2)^(-alpha)/(k+1).
// kmax < 0 sums the full series, which requires alpha > 0.
double expected_sq_sobolev_norm(double alpha, int kmax = -1);

}  // namespace guefield

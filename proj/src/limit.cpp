#include "guefield/limit.hpp"

#include <cmath>
#include <stdexcept>

#include "guefield/rng.hpp"

namespace guefield {

LimitSample sample_limit(int kmax, std::uint64_t seed) {
  if (kmax < 0) throw std::invalid_argument("sample_limit: kmax must be nonnegative");
  LimitSample sample;
  sample.y.resize(kmax + 1);
  RngStream rng(seed);
  for (int k = 0; k <= kmax; ++k) sample.y[k] = rng.normal();
  sample.seed = seed;
  return sample;
}

Eigen::VectorXd limit_coeffs(const LimitSample& sample) {
  const int size = static_cast<int>(sample.y.size());
  Eigen::VectorXd s(size);
  for (int k = 0; k < size; ++k) s[k] = sample.y[k] / std::sqrt(k + 1.0);
  return s;
}

double limit_eval(const LimitSample& sample, double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw std::domain_error("limit_eval: x outside [-1, 1]");
  const double weight = std::sqrt(1.0 - x * x);
  if (weight == 0.0) return 0.0;
  // U_k recurrence fused with the sum; s_k = y_k / sqrt(k+1).
  double u_prev = 0.0, u_curr = 1.0;
  double sum = 0.0;
  for (int k = 0; k < sample.y.size(); ++k) {
    sum += sample.y[k] / std::sqrt(k + 1.0) * u_curr;
    const double u_next = 2.0 * x * u_curr - u_prev;
    u_prev = u_curr;
    u_curr = u_next;
  }
  return sum * weight;
}

double kernel_closed(double x, double y) {
  if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0)) throw std::domain_error("kernel_closed: arguments must lie in (-1, 1)");
  if (x == y) throw std::domain_error("kernel_closed: singular on the diagonal");
  const double denom = 1.0 - x * y + std::sqrt((1.0 - x * x) * (1.0 - y * y));
  return -0.5 * std::log(std::abs(x - y) / denom);
}

double kernel_series(double x, double y, int terms) {
  if (terms < 0) throw std::invalid_argument("kernel_series: negative truncation");
  const double weight = std::sqrt((1.0 - x * x) * (1.0 - y * y));
  double ux_prev = 0.0, ux_curr = 1.0;
  double uy_prev = 0.0, uy_curr = 1.0;
  double sum = 0.0;
  for (int k = 0; k <= terms; ++k) {
    sum += ux_curr * uy_curr / (k + 1.0);
    const double ux_next = 2.0 * x * ux_curr - ux_prev;
    ux_prev = ux_curr;
    ux_curr = ux_next;
    const double uy_next = 2.0 * y * uy_curr - uy_prev;
    uy_prev = uy_curr;
    uy_curr = uy_next;
  }
  return sum * weight;
}

double kernel_tail_bound(double x, double y, int terms) {
  if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0)) throw std::domain_error("kernel_tail_bound: arguments must lie in (-1, 1)");
  if (x == y) throw std::domain_error("kernel_tail_bound: singular on the diagonal");
  const double a = std::acos(x), b = std::acos(y);
  const double s_minus = std::abs(std::sin(0.5 * (a - b)));
  const double s_plus = std::abs(std::sin(0.5 * (a + b)));
  if (s_minus == 0.0 || s_plus == 0.0) throw std::domain_error("kernel_tail_bound: degenerate angle pair");
  return 0.5 / (terms + 1.0) * (1.0 / s_minus + 1.0 / s_plus);
}

int terms_for_tolerance(double x, double y, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("terms_for_tolerance: tol must be positive");
  const double at_one = kernel_tail_bound(x, y, 1);  // = bound * 2 / (terms + 1) at terms = 1
  const double needed = 2.0 * at_one / tol - 1.0;
  const int terms = static_cast<int>(std::ceil(needed));
  return std::max(terms, 1);
}

double limit_cov(double x, double y) { return kernel_closed(x, y); }

double sobolev_norm(const Eigen::VectorXd& coeffs, double alpha) {
  double sum = 0.0;
  for (int k = 0; k < coeffs.size(); ++k) {
    sum += coeffs[k] * coeffs[k] * std::pow(1.0 + static_cast<double>(k) * k, alpha);
  }
  return std::sqrt(sum);
}

double expected_sq_sobolev_norm(double alpha, int kmax) {
  if (kmax >= 0) {
    double sum = 0.0;
    for (int k = 0; k <= kmax; ++k) {
      sum += std::pow(1.0 + static_cast<double>(k) * k, -alpha) / (k + 1.0);
    }
    return sum;
  }
  if (!(alpha > 0.0)) throw std::domain_error("expected_sq_sobolev_norm: the full series needs alpha > 0");
  double sum = 0.0;
  for (int k = 0;; ++k) {
    const double term = std::pow(1.0 + static_cast<double>(k) * k, -alpha) / (k + 1.0);
    sum += term;
    // Tail comparison with the integral of x^(-2 alpha - 1).
    if (k > 16) {
      const double tail = term * (k + 1.0) / (2.0 * alpha) * (1.0 + 1.0 / k);
      if (tail < 1e-13 * (sum + 1.0)) break;
    }
    if (k > 200000000) throw std::runtime_error("expected_sq_sobolev_norm: series too slow for this alpha");
  }
  return sum;
}

}  // namespace guefield

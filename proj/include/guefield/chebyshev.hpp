#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "guefield/quadrature.hpp"

namespace guefield {

// Chebyshev polynomial of the first kind, three-term recurrence.
template <class Scalar>
Scalar t_eval(int n, Scalar x) {
  if (n < 0) throw std::invalid_argument("t_eval: degree must be nonnegative");
  if (n == 0) return Scalar(1);
  Scalar prev = Scalar(1);
  Scalar curr = x;
  for (int k = 1; k < n; ++k) {
    Scalar next = Scalar(2) * x * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

// Chebyshev polynomial of the second kind.
template <class Scalar>
Scalar u_eval(int n, Scalar x) {
  if (n < 0) throw std::invalid_argument("u_eval: degree must be nonnegative");
  if (n == 0) return Scalar(1);
  Scalar prev = Scalar(1);
  Scalar curr = Scalar(2) * x;
  for (int k = 1; k < n; ++k) {
    Scalar next = Scalar(2) * x * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

// k-th derivative of T_n at x, by differentiating the recurrence:
// T_{m+1}^(l) = 2x T_m^(l) + 2l T_m^(l-1) - T_{m-1}^(l).
template <class Scalar>
Scalar t_deriv(int n, int k, Scalar x) {
  if (n < 0 || k < 0) throw std::invalid_argument("t_deriv: negative argument");
  if (k == 0) return t_eval(n, x);
  if (k > n) return Scalar(0);
  // d[l] holds T_m^(l)(x), prev[l] holds T_{m-1}^(l)(x).
  std::vector<Scalar> prev(k + 1, Scalar(0)), curr(k + 1, Scalar(0));
  prev[0] = Scalar(1);  // T_0
  curr[0] = x;          // T_1
  if (k >= 1) curr[1] = Scalar(1);
  for (int m = 1; m < n; ++m) {
    std::vector<Scalar> next(k + 1);
    for (int l = 0; l <= k; ++l) {
      Scalar lower = (l > 0) ? curr[l - 1] : Scalar(0);
      next[l] = Scalar(2) * x * curr[l] + Scalar(2) * Scalar(l) * lower - prev[l];
    }
    prev.swap(curr);
    curr.swap(next);
  }
  return curr[k];
}

// T_n^(k)(1) = prod_{j=0}^{k-1} (n^2 - j^2) / (2j + 1).
inline double t_deriv_at_one(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("t_deriv_at_one: negative argument");
  double value = 1.0;
  for (int j = 0; j < k; ++j) {
    value *= (static_cast<double>(n) * n - static_cast<double>(j) * j) / (2.0 * j + 1.0);
  }
  return value;
}

// Coefficients of T_n in the monomial basis, index = power of x. The
// recurrence stays in exactly representable integers up to n = 42.
inline std::vector<double> t_polynomial_coefficients(int n) {
  if (n < 0) throw std::invalid_argument("t_polynomial_coefficients: negative degree");
  if (n > 42) throw std::domain_error("t_polynomial_coefficients: coefficients exceed exact double range");
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> curr{0.0, 1.0};
  for (int m = 1; m < n; ++m) {
    std::vector<double> next(m + 2, 0.0);
    for (int i = 0; i <= m; ++i) next[i + 1] += 2.0 * curr[i];
    for (int i = 0; i < static_cast<int>(prev.size()); ++i) next[i] -= prev[i];
    prev.swap(curr);
    curr.swap(next);
  }
  return curr;
}

// Coefficient of f against U_k in the weighted expansion on [-1, 1]:
// s_k(f) = (2/pi) int f(x) U_k(x) dx.
inline double sine_coeff(const std::function<double(double)>& f, int k,
                         double tol = 1e-11) {
  if (k < 0) throw std::invalid_argument("sine_coeff: negative index");
  auto integrand = [&](double x) { return f(x) * u_eval(k, x); };
  return 2.0 / std::numbers::pi * integrate(integrand, -1.0, 1.0, tol);
}

// Cosine coefficient a_k(f) = (2/pi) int_0^pi f(cos t) cos(k t) dt.
inline double cos_coeff(const std::function<double(double)>& f, int k,
                        double tol = 1e-11) {
  if (k < 0) throw std::invalid_argument("cos_coeff: negative index");
  auto integrand = [&](double t) { return f(std::cos(t)) * std::cos(k * t); };
  return 2.0 / std::numbers::pi * integrate(integrand, 0.0, std::numbers::pi, tol);
}

}  // namespace guefield

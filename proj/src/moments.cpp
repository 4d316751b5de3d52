#include "guefield/moments.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace guefield {

namespace {

using int128 = __int128;

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool mul_checked(int128 a, int128 b, int128* out) {
  return !__builtin_mul_overflow(a, b, out);
}

bool add_checked(int128 a, int128 b, int128* out) {
  return !__builtin_add_overflow(a, b, out);
}

// Trace moments C_j(n) = E Tr H^{2j} for the unit-variance Hermitian
// ensemble, by the classical recursion
//   (k+2) C_{k+1} = (4k+2) n C_k + k (4k^2-1) C_{k-1}.
// These are integers; the division is exact. Returns false on overflow.
bool power_trace_integer(int j, int n, int128* out) {
  int128 prev = n;                              // C_0
  int128 curr = static_cast<int128>(n) * n;     // C_1
  if (j == 0) { *out = prev; return true; }
  for (int k = 1; k < j; ++k) {
    int128 a, b, next;
    if (!mul_checked(curr, static_cast<int128>(4 * k + 2) * n, &a)) return false;
    if (!mul_checked(prev, static_cast<int128>(k) * (4 * k * k - 1), &b)) return false;
    if (!add_checked(a, b, &next)) return false;
    next /= (k + 2);
    prev = curr;
    curr = next;
  }
  *out = curr;
  return true;
}

// E sum lambda^{2j} = C_j(n) / (4n)^j as a reduced fraction, exact while the
// 128-bit arithmetic holds.
bool power_trace_fraction(int j, int n, int128* num, int128* den) {
  if (!power_trace_integer(j, n, num)) return false;
  int128 d = 1;
  for (int i = 0; i < j; ++i) {
    if (!mul_checked(d, 4 * static_cast<int128>(n), &d)) return false;
  }
  const int128 g = gcd128(*num, d);
  *num /= g;
  *den = d / g;
  return true;
}

// Monomial coefficients of T_m in 128-bit integers (exact up to m = 80).
std::vector<int128> t_coefficients_exact(int m) {
  if (m > 80) throw std::domain_error("expected_t_trace: degree exceeds the exact coefficient range");
  std::vector<int128> prev{1};
  if (m == 0) return prev;
  std::vector<int128> curr{0, 1};
  for (int d = 1; d < m; ++d) {
    std::vector<int128> next(d + 2, 0);
    for (int i = 0; i <= d; ++i) next[i + 1] += 2 * curr[i];
    for (int i = 0; i < static_cast<int>(prev.size()); ++i) next[i] -= prev[i];
    prev.swap(curr);
    curr.swap(next);
  }
  return curr;
}

}  // namespace

MomentTable harer_zagier(int jmax, int n) {
  if (jmax < 0) throw std::invalid_argument("harer_zagier: jmax must be nonnegative");
  if (n < 1) throw std::invalid_argument("harer_zagier: n must be positive");
  MomentTable table;
  table.n = n;
  table.b.resize(jmax + 1);
  table.b[0] = 1.0;
  if (jmax >= 1) table.b[1] = 1.0;
  const double inv = 1.0 / (4.0 * static_cast<double>(n) * n);
  for (int k = 1; k < jmax; ++k) {
    table.b[k + 1] = table.b[k] + k * (k + 1.0) * inv * table.b[k - 1];
  }
  return table;
}

double catalan(int j) {
  if (j < 0) throw std::invalid_argument("catalan: negative index");
  double c = 1.0;
  for (int i = 0; i < j; ++i) c *= 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return c;
}

double expected_power_trace(int j, int n) {
  if (j < 0) throw std::invalid_argument("expected_power_trace: negative power");
  if (n < 1) throw std::invalid_argument("expected_power_trace: n must be positive");
  int128 num, den;
  if (power_trace_fraction(j, n, &num, &den)) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  const MomentTable table = harer_zagier(j, n);
  return n * table.b[j] * std::pow(0.25, j) * catalan(j);
}

double expected_t_trace(int m, int n) {
  if (m < 0) throw std::invalid_argument("expected_t_trace: negative degree");
  if (n < 1) throw std::invalid_argument("expected_t_trace: n must be positive");
  const std::vector<int128> coeffs = t_coefficients_exact(m);
  if (m % 2 == 1) return 0.0;

  // Try the fully exact route first: common denominator (4n)^(m/2).
  {
    int128 scale = 1;
    bool ok = true;
    std::vector<int128> dens(m / 2 + 1);
    std::vector<int128> nums(m / 2 + 1);
    for (int j = 0; j <= m / 2 && ok; ++j) {
      ok = power_trace_fraction(j, n, &nums[j], &dens[j]);
    }
    for (int j = 0; j <= m / 2 && ok; ++j) ok = mul_checked(scale, 4 * static_cast<int128>(n), &scale);
    if (ok) {
      // scale = (4n)^(m/2+1); use (4n)^(m/2) as the common denominator.
      int128 common = scale / (4 * static_cast<int128>(n));
      int128 total = 0;
      for (int j = 0; j <= m / 2 && ok; ++j) {
        int128 term;
        ok = mul_checked(coeffs[2 * j], nums[j], &term) &&
             mul_checked(term, common / dens[j], &term) && add_checked(total, term, &total);
      }
      if (ok) {
        const int128 g = gcd128(total, common);
        return static_cast<double>(total / g) / static_cast<double>(common / g);
      }
    }
  }

  long double sum = 0.0L;
  for (int j = 0; j <= m / 2; ++j) {
    sum += static_cast<long double>(coeffs[2 * j]) *
           static_cast<long double>(expected_power_trace(j, n));
  }
  return static_cast<double>(sum);
}

double expected_cheb_trace(int k, int n) {
  if (k < 0) throw std::invalid_argument("expected_cheb_trace: negative index");
  return expected_t_trace(k + 1, n) / (k + 1);
}

double semicircle_cheb_integral(int k) {
  if (k < 0) throw std::invalid_argument("semicircle_cheb_integral: negative index");
  // int T_m sigma dx vanishes except for m = 0 (value 1) and m = 2 (value
  // -1/2), via T_m = (U_m - U_{m-2}) / 2 and the U orthogonality.
  return k == 1 ? -0.25 : 0.0;
}

}  // namespace guefield

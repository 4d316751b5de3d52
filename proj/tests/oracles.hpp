#pragma once

// Test-side reference implementations, deliberately independent of the
// library's numerics: adaptive Simpson quadrature, reduced 128-bit rationals,
// and a pairing-enumeration oracle for Gaussian matrix moments.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson_panel(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                              double fa, double fm, double fb, double whole, double tol,
                              int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_panel(f, a, m, fa, flm, fm);
  const double right = simpson_panel(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("adaptive Simpson recursion too deep");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

// Adaptive Simpson; good to ~tol on piecewise-smooth integrands.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_panel(f, a, b, fa, fm, fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Integrate with explicit interior breakpoints so jump discontinuities never
// land inside a panel.
inline double integrate_piecewise(const std::function<double(double)>& f,
                                  const std::vector<double>& knots, double tol = 1e-11) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i + 1] > knots[i]) sum += integrate(f, knots[i], knots[i + 1], tol);
  }
  return sum;
}

using int128 = __int128;

inline int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Reduced fraction over 128-bit integers. Arithmetic throws on overflow, so a
// wrong answer can never masquerade as a passing comparison.
struct Rational {
  int128 num = 0;
  int128 den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(int128 n, int128 d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static int128 checked_mul(int128 a, int128 b) {
    int128 out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
    return out;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const int128 g = gcd128(a.den, b.den);
    const int128 lhs = checked_mul(a.num, b.den / g);
    const int128 rhs = checked_mul(b.num, a.den / g);
    int128 num = 0;
    if (__builtin_add_overflow(lhs, rhs, &num)) throw std::overflow_error("rational overflow");
    return Rational(num, checked_mul(a.den, b.den / g));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const Rational x(a.num, b.den);
    const Rational y(b.num, a.den);
    return Rational(checked_mul(x.num, y.num), checked_mul(x.den, y.den));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("division by zero");
    return a * Rational(b.den, b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  // Same num/den -> double conversion the library uses, so exact comparisons
  // of reduced fractions carry over to bitwise-equal doubles.
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational pow(Rational base, int exp) {
  Rational out(1);
  for (int i = 0; i < exp; ++i) out = out * base;
  return out;
}

namespace detail {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void merge(int a, int b) { parent[find(a)] = find(b); }
  int components() {
    int count = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) {
      if (find(i) == i) ++count;
    }
    return count;
  }
};

inline int128 ipow(int128 base, int exp) {
  int128 out = 1;
  for (int i = 0; i < exp; ++i) out = Rational::checked_mul(out, base);
  return out;
}

// Enumerate perfect matchings of {0..2j-1}; each matched pair (p,q) of factor
// slots identifies index slots p==q+1 and p+1==q around the trace cycle. The
// matching contributes n^{#components} index assignments.
inline void matchings(std::vector<int>& slots, std::vector<std::pair<int, int>>& pairs,
                      int two_j, int n, int128& total) {
  int first = -1;
  for (int i = 0; i < two_j; ++i) {
    if (slots[i] == 0) {
      first = i;
      break;
    }
  }
  if (first < 0) {
    Dsu dsu(two_j);
    for (const auto& [p, q] : pairs) {
      dsu.merge(p, (q + 1) % two_j);
      dsu.merge((p + 1) % two_j, q);
    }
    total += ipow(n, dsu.components());
    return;
  }
  slots[first] = 1;
  for (int j = first + 1; j < two_j; ++j) {
    if (slots[j] != 0) continue;
    slots[j] = 1;
    pairs.emplace_back(first, j);
    matchings(slots, pairs, two_j, n, total);
    pairs.pop_back();
    slots[j] = 0;
  }
  slots[first] = 0;
}

}  // namespace detail

// E tr H^{2j} for an n x n Hermitian Gaussian matrix with unit entry
// covariance E[H_ab H_cd] = delta_ad delta_bc, by summing over pairings.
inline int128 wick_trace_moment(int j, int n) {
  if (j == 0) return n;
  std::vector<int> slots(2 * j, 0);
  std::vector<std::pair<int, int>> pairs;
  int128 total = 0;
  detail::matchings(slots, pairs, 2 * j, n, total);
  return total;
}

// E sum lambda^{2j} for the scaled ensemble (eigenvalues supported on [-1,1])
// as a reduced rational: wick_trace_moment / (4n)^j.
inline Rational wick_power_trace(int j, int n) {
  return Rational(wick_trace_moment(j, n), detail::ipow(4 * static_cast<int128>(n), j));
}

}  // namespace oracle

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

namespace guefield {

// Semicircle density on [-1, 1]: sigma(x) = (2/pi) sqrt(1 - x^2).
template <class Scalar>
Scalar semicircle_density(Scalar x) {
  if (x < Scalar(-1) || x > Scalar(1)) throw std::domain_error("semicircle_density: |x| > 1");
  if (x == Scalar(-1) || x == Scalar(1)) return Scalar(0);
  return Scalar(2) / std::numbers::pi_v<Scalar> * std::sqrt(Scalar(1) - x * x);
}

// Cumulative distribution G(x) = 1/2 + (x sqrt(1-x^2) + asin x) / pi.
template <class Scalar>
Scalar semicircle_cdf(Scalar x) {
  if (x < Scalar(-1) || x > Scalar(1)) throw std::domain_error("semicircle_cdf: |x| > 1");
  if (x == Scalar(-1)) return Scalar(0);
  if (x == Scalar(1)) return Scalar(1);
  return Scalar(0.5) +
         (x * std::sqrt(Scalar(1) - x * x) + std::asin(x)) / std::numbers::pi_v<Scalar>;
}

// Antiderivative of y sigma(y): A(y) = -(2/(3 pi)) (1 - y^2)^(3/2), so the
// first-moment mass of [a, b] is A(b) - A(a).
template <class Scalar>
Scalar semicircle_first_moment(Scalar a, Scalar b) {
  auto anti = [](Scalar y) {
    if (y <= Scalar(-1) || y >= Scalar(1)) return Scalar(0);
    Scalar one_minus = Scalar(1) - y * y;
    return -Scalar(2) / (Scalar(3) * std::numbers::pi_v<Scalar>)*one_minus *
           std::sqrt(one_minus);
  };
  return anti(b) - anti(a);
}

// Inverse of semicircle_cdf, solved by bisection with Newton refinement to
// 1e-12 on the CDF scale. Endpoints are returned exactly.
double semicircle_quantile(double p);

// Classical eigenvalue locations gamma_j = G^{-1}(j/n) together with the
// per-cell mean locations and the density at the nodes.
//
// gamma has n+1 entries with gamma[0] = -1 and gamma[n] = +1 exact; cell j
// (0-based) is the interval (gamma[j], gamma[j+1]]. cell_mean[j] is
// n * int_{gamma[j]}^{gamma[j+1]} y sigma(y) dy and cell_density[j] is
// sigma(gamma[j]). Nodes are mirrored so gamma[n-j] == -gamma[j] bitwise.
struct SemicirclePartition {
  int n = 0;
  Eigen::VectorXd gamma;         // n+1 nodes
  Eigen::VectorXd cell_mean;     // n cells
  Eigen::VectorXd cell_density;  // n+1 node densities
};

SemicirclePartition build_partition(int n);

}  // namespace guefield

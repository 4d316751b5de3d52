#pragma once

#include <Eigen/Core>

namespace guefield {

// Correction factors b_j to the semicircle moments at matrix size n:
//   E sum_j lambda_j^(2j) = n * b_j * 4^(-j) * catalan(j),
// with b_0 = b_1 = 1 and b_{k+1} = b_k + (k (k+1) / (4 n^2)) b_{k-1}.
// The increments reproduce the genus expansion of the trace moments; every
// b_j is >= 1 and the table is nondecreasing in j.
struct MomentTable {
  int n = 0;
  Eigen::VectorXd b;  // b[0..jmax]
};

MomentTable harer_zagier(int jmax, int n);

double catalan(int j);

// E sum_j lambda_j^(2j). Small (j, n) pairs are evaluated through an exact
// integer recursion and a reduced 128-bit fraction, so the returned double
// is the correctly rounded true value; larger pairs fall back to the b-table.
double expected_power_trace(int j, int n);

// E sum_j T_m(lambda_j), assembled from the monomial coefficients of T_m and
// the even power traces (odd moments vanish by symmetry).
double expected_t_trace(int m, int n);

// Exact finite-n mean of the k-th field coefficient's linear statistic:
// E sum_j T_{k+1}(lambda_j) / (k+1).
double expected_cheb_trace(int k, int n);

// Semicircle counterpart int T_{k+1}(x) sigma(x) dx / (k+1); equals -1/4 at
// k = 1 and vanishes for every other k.
double semicircle_cheb_integral(int k);

}  // namespace guefield

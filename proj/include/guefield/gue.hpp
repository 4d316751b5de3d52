#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace guefield {

enum class SamplerKind { dense, tridiag };

const char* sampler_name(SamplerKind kind);
SamplerKind sampler_from_name(const std::string& name);

// Sorted eigenvalues of one GUE draw, scaled so the spectrum concentrates on
// [-1, 1] (matrix entries have total variance 1/2 and the matrix is divided
// by sqrt(2n)).
struct Spectrum {
  int n = 0;
  Eigen::VectorXd lambda;  // ascending
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::tridiag;
};

// Dense route: fill the Hermitian matrix entrywise and diagonalize with
// Eigen. Capped at n = 512; throws std::length_error above the cap.
Spectrum sample_dense(int n, std::uint64_t seed);

// Tridiagonal route: the beta = 2 tridiagonal model (normal diagonal,
// chi-distributed subdiagonal with decreasing dof), eigenvalues by QL,
// scaled by 1 / (2 sqrt(n)). Agrees with the dense route in law.
Spectrum sample_tridiag(int n, std::uint64_t seed);

Spectrum sample_spectrum(SamplerKind kind, int n, std::uint64_t seed);

// Number of eigenvalues strictly below x.
int counting_function(const Spectrum& spectrum, double x);

// Per-replica seed derived from a master seed, stable across runs and
// thread counts.
std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica_index);

}  // namespace guefield

#include "guefield/gue.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "guefield/rng.hpp"
#include "guefield/tridiag.hpp"

namespace guefield {

const char* sampler_name(SamplerKind kind) {
  return kind == SamplerKind::dense ? "dense" : "tridiag";
}

SamplerKind sampler_from_name(const std::string& name) {
  if (name == "dense") return SamplerKind::dense;
  if (name == "tridiag") return SamplerKind::tridiag;
  throw std::invalid_argument("unknown sampler: " + name);
}

Spectrum sample_dense(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_dense: n must be positive");
  if (n > 512) throw std::length_error("sample_dense: capped at n = 512, use the tridiagonal sampler");
  RngStream rng(seed);

  // Diagonal entries N(0, 1/2); off-diagonal real and imaginary parts
  // N(0, 1/4) each. Draw order: diagonal, then upper triangle row by row.
  Eigen::MatrixXcd h(n, n);
  const double diag_sd = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) h(i, i) = diag_sd * rng.normal();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double re = 0.5 * rng.normal();
      const double im = 0.5 * rng.normal();
      h(i, j) = std::complex<double>(re, im);
      h(j, i) = std::conj(h(i, j));
    }
  }
  h /= std::sqrt(2.0 * n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("sample_dense: eigensolver failed");

  Spectrum spectrum;
  spectrum.n = n;
  spectrum.lambda = solver.eigenvalues();
  spectrum.seed = seed;
  spectrum.sampler = SamplerKind::dense;
  return spectrum;
}

Spectrum sample_tridiag(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_tridiag: n must be positive");
  RngStream rng(seed);

  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) diag[i] = rng.normal();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 1; k <= n - 1; ++k) sub[k - 1] = inv_sqrt2 * rng.chi(2 * (n - k));

  Spectrum spectrum;
  spectrum.n = n;
  spectrum.lambda = tridiagonal_eigenvalues(diag, sub) / (2.0 * std::sqrt(n));
  spectrum.seed = seed;
  spectrum.sampler = SamplerKind::tridiag;
  return spectrum;
}

Spectrum sample_spectrum(SamplerKind kind, int n, std::uint64_t seed) {
  return kind == SamplerKind::dense ? sample_dense(n, seed) : sample_tridiag(n, seed);
}

int counting_function(const Spectrum& spectrum, double x) {
  const double* begin = spectrum.lambda.data();
  const double* end = begin + spectrum.lambda.size();
  return static_cast<int>(std::lower_bound(begin, end, x) - begin);
}

std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica_index) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (replica_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace guefield

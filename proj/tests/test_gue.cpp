#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "guefield/gue.hpp"
#include "guefield/semicircle.hpp"
#include "guefield/stats.hpp"

using guefield::replica_seed;
using guefield::sample_dense;
using guefield::sample_spectrum;
using guefield::sample_tridiag;
using guefield::SamplerKind;
using guefield::Spectrum;

TEST_SUITE("gue") {

TEST_CASE("sampler names round-trip") {
  CHECK(guefield::sampler_from_name("dense") == SamplerKind::dense);
  CHECK(guefield::sampler_from_name("tridiag") == SamplerKind::tridiag);
  CHECK(guefield::sampler_name(SamplerKind::dense) == std::string("dense"));
  CHECK(guefield::sampler_name(SamplerKind::tridiag) == std::string("tridiag"));
  CHECK_THROWS_AS(guefield::sampler_from_name("banded"), std::invalid_argument);
}

TEST_CASE("draws are deterministic and sorted") {
  for (SamplerKind kind : {SamplerKind::dense, SamplerKind::tridiag}) {
    const auto a = sample_spectrum(kind, 32, 99);
    const auto b = sample_spectrum(kind, 32, 99);
    REQUIRE(a.lambda.size() == 32);
    CHECK(a.sampler == kind);
    CHECK(a.seed == 99);
    for (int i = 0; i < 32; ++i) CHECK(a.lambda[i] == b.lambda[i]);
    for (int i = 0; i + 1 < 32; ++i) CHECK(a.lambda[i] <= a.lambda[i + 1]);
    const auto c = sample_spectrum(kind, 32, 100);
    CHECK(a.lambda[0] != c.lambda[0]);
  }
}

TEST_CASE("dense path is capped") {
  CHECK_THROWS_AS(sample_dense(513, 1), std::length_error);
  CHECK_THROWS_AS(sample_dense(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_tridiag(-2, 1), std::invalid_argument);
}

TEST_CASE("n = 1 laws: dense eigenvalue is Normal(0, 1/4)") {
  const int m = 20000;
  Eigen::VectorXd values(m);
  for (int i = 0; i < m; ++i) values[i] = sample_dense(1, replica_seed(5, i)).lambda[0];
  CHECK(guefield::sample_mean(values) == doctest::Approx(0.0).scale(1.0).epsilon(0.012));
  CHECK(guefield::sample_variance(values) == doctest::Approx(0.25).epsilon(0.04));
  const auto ks = guefield::ks_test(values, [](double x) {
    return guefield::normal_cdf(2.0 * x);
  });
  CHECK(ks.pvalue >= 0.001);
}

TEST_CASE("second moment matches n/4 for both samplers") {
  // E sum lambda^2 = n/4 exactly at every n.
  const int m = 3000;
  double dense_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    dense_sum += sample_dense(8, replica_seed(21, i)).lambda.squaredNorm();
  }
  CHECK(dense_sum / m == doctest::Approx(2.0).epsilon(0.02));

  double tri_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    tri_sum += sample_tridiag(64, replica_seed(22, i)).lambda.squaredNorm();
  }
  CHECK(tri_sum / m == doctest::Approx(16.0).epsilon(0.002));
}

TEST_CASE("pooled eigenvalues follow the semicircle law") {
  const int n = 256, m = 20;
  Eigen::VectorXd pool(n * m);
  for (int i = 0; i < m; ++i) {
    const auto spectrum = sample_tridiag(n, replica_seed(4242, i));
    pool.segment(i * n, n) = spectrum.lambda;
  }
  const auto ks = guefield::ks_test(pool, [](double x) {
    const double clamped = std::clamp(x, -1.0, 1.0);
    return guefield::semicircle_cdf(clamped);
  });
  // Rigidity makes pooled draws closer to G than iid sampling would be, so
  // the KS statistic should be small outright.
  CHECK(ks.statistic < 0.02);
}

TEST_CASE("dense and tridiagonal spectra agree in law") {
  const int n = 16, m = 300;
  Eigen::VectorXd a(n * m), b(n * m);
  for (int i = 0; i < m; ++i) {
    a.segment(i * n, n) = sample_dense(n, replica_seed(7, i)).lambda;
    b.segment(i * n, n) = sample_tridiag(n, replica_seed(8, i)).lambda;
  }
  const auto ks = guefield::ks_two_sample(a, b);
  CHECK(ks.pvalue >= 0.001);
}

TEST_CASE("counting function uses strict inequality") {
  Spectrum spectrum;
  spectrum.n = 3;
  spectrum.lambda.resize(3);
  spectrum.lambda << -0.5, 0.1, 0.1;
  CHECK(guefield::counting_function(spectrum, -0.9) == 0);
  CHECK(guefield::counting_function(spectrum, -0.5) == 0);
  CHECK(guefield::counting_function(spectrum, -0.499) == 1);
  CHECK(guefield::counting_function(spectrum, 0.1) == 1);
  CHECK(guefield::counting_function(spectrum, 0.11) == 3);
  CHECK(guefield::counting_function(spectrum, 0.9) == 3);
}

TEST_CASE("replica seeds do not collide") {
  std::set<std::uint64_t> seeds;
  for (int i = 0; i < 10000; ++i) seeds.insert(replica_seed(1, i));
  CHECK(seeds.size() == 10000);
  CHECK(replica_seed(1, 0) != replica_seed(2, 0));
}

}  // TEST_SUITE

#include <cmath>
#include <stdexcept>

#include <doctest.h>
#include <Eigen/Core>

#include "guefield/rng.hpp"
#include "guefield/stats.hpp"

using guefield::ks_pvalue;
using guefield::ks_statistic;
using guefield::ks_test_normal;
using guefield::ks_two_sample;
using guefield::ls_slope;
using guefield::normal_cdf;
using guefield::RngStream;
using guefield::sample_covariance;
using guefield::sample_mean;
using guefield::sample_variance;

namespace {

Eigen::VectorXd normals(std::uint64_t seed, int m, double shift = 0.0) {
  RngStream rng(seed);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v[i] = rng.normal() + shift;
  return v;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-14));
  for (double x : {0.3, 1.0, 2.7}) {
    CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(normal_cdf(-10.0) < 1e-20);
}

TEST_CASE("one-sample statistic, hand case") {
  Eigen::VectorXd sample(3);
  sample << 0.5, 0.1, 0.9;  // unsorted on purpose
  auto uniform_cdf = [](double x) { return x; };
  CHECK(ks_statistic(sample, uniform_cdf) == doctest::Approx(7.0 / 30.0).epsilon(1e-15));
  CHECK_THROWS_AS(ks_statistic(Eigen::VectorXd(), uniform_cdf), std::invalid_argument);
}

TEST_CASE("p-value behavior") {
  CHECK(ks_pvalue(1e-4, 100.0) == 1.0);  // below the series cutoff
  // d chosen so the corrected statistic is exactly 1.
  const double d = 1.0 / (std::sqrt(100.0) + 0.12 + 0.11 / std::sqrt(100.0));
  CHECK(ks_pvalue(d, 100.0) == doctest::Approx(0.2699996716773795).epsilon(1e-12));
  CHECK(ks_pvalue(0.05, 400.0) > ks_pvalue(0.08, 400.0));
  CHECK(ks_pvalue(0.08, 400.0) > ks_pvalue(0.12, 400.0));
  CHECK_THROWS_AS(ks_pvalue(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("normality test accepts normals and rejects a shift") {
  const auto good = ks_test_normal(normals(321, 2000));
  CHECK(good.pvalue > 0.01);
  CHECK(good.statistic < 0.05);
  const auto bad = ks_test_normal(normals(321, 2000, 0.5));
  CHECK(bad.pvalue < 1e-10);
}

TEST_CASE("two-sample statistic, hand case") {
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 2.0;
  b << 1.5, 2.5;
  CHECK(ks_two_sample(a, b).statistic == 0.5);
  CHECK_THROWS_AS(ks_two_sample(a, Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("two-sample test separates laws") {
  const auto a = normals(77, 900);
  const auto b = normals(78, 900);
  CHECK(ks_two_sample(a, b).pvalue > 0.01);
  const Eigen::VectorXd shifted = b.array() + 1.0;
  CHECK(ks_two_sample(a, shifted).pvalue < 1e-8);
}

TEST_CASE("moment reductions") {
  Eigen::VectorXd v(4);
  v << 1.0, 2.0, 3.0, 4.0;
  CHECK(sample_mean(v) == 2.5);
  CHECK(sample_variance(v) == 5.0 / 3.0);
  CHECK_THROWS_AS(sample_mean(Eigen::VectorXd()), std::invalid_argument);
  CHECK_THROWS_AS(sample_variance(Eigen::VectorXd::Ones(1)), std::invalid_argument);
}

TEST_CASE("covariance of replica rows") {
  Eigen::MatrixXd rows(3, 2);
  rows << 1.0, 2.0,
          2.0, 4.0,
          3.0, 6.0;
  const Eigen::MatrixXd cov = sample_covariance(rows);
  REQUIRE(cov.rows() == 2);
  CHECK(cov(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cov(1, 1) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(cov(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cov(0, 1) == cov(1, 0));
  for (int i = 0; i < 2; ++i) {
    CHECK(cov(i, i) == doctest::Approx(sample_variance(rows.col(i))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sample_covariance(rows.topRows(1)), std::invalid_argument);
}

TEST_CASE("least-squares slope") {
  Eigen::VectorXd x(4), y(4);
  x << 0.0, 1.0, 2.0, 3.0;
  y = 3.0 * x.array() + 1.0;
  CHECK(ls_slope(x, y) == 3.0);

  Eigen::VectorXd px(3), py(3);
  px << 0.0, 1.0, 2.0;
  py << 0.0, 1.0, 4.0;
  CHECK(ls_slope(px, py) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(ls_slope(x, px), std::invalid_argument);
  CHECK_THROWS_AS(ls_slope(Eigen::VectorXd::Ones(3), py), std::invalid_argument);
}

}  // TEST_SUITE

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "guefield/chebyshev.hpp"
#include "guefield/field.hpp"
#include "guefield/gue.hpp"
#include "guefield/semicircle.hpp"
#include "oracles.hpp"

using guefield::build_counting_field;
using guefield::build_field;
using guefield::build_partition;
using guefield::Centering;
using guefield::counting_coeffs;
using guefield::field_coeffs;
using guefield::field_eval;
using guefield::FluctuationField;
using guefield::SemicirclePartition;
using guefield::Spectrum;

namespace {

std::shared_ptr<const SemicirclePartition> shared_partition(int n) {
  return std::make_shared<const SemicirclePartition>(build_partition(n));
}

Spectrum make_spectrum(const Eigen::VectorXd& lambda) {
  Spectrum spectrum;
  spectrum.n = static_cast<int>(lambda.size());
  spectrum.lambda = lambda;
  return spectrum;
}

std::vector<double> knots_of(const Eigen::VectorXd& gamma) {
  return std::vector<double>(gamma.data(), gamma.data() + gamma.size());
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("worked two-cell example") {
  const auto partition = shared_partition(2);
  Eigen::VectorXd lambda(2);
  lambda << -0.6, 0.4;
  const auto field = build_field(make_spectrum(lambda), partition);
  REQUIRE(field.values.size() == 2);
  const double expected0 =
      2.0 * (2.0 / std::numbers::pi) * (-0.6 + 4.0 / (3.0 * std::numbers::pi));
  CHECK(field.values[0] == doctest::Approx(expected0).epsilon(1e-14));
  // sigma(1) = 0 kills the last cell regardless of lambda.
  CHECK(field.values[1] == 0.0);
}

TEST_CASE("centering and sign properties") {
  const int n = 12;
  const auto partition = shared_partition(n);
  // lambda at the cell means: identically zero field.
  const auto zero_field = build_field(make_spectrum(partition->cell_mean), partition);
  for (int j = 0; j < n; ++j) CHECK(zero_field.values[j] == 0.0);
  // lambda at the right endpoints: nonnegative field.
  const auto right = build_field(
      make_spectrum(partition->gamma.tail(n)), partition);
  for (int j = 0; j < n; ++j) CHECK(right.values[j] >= 0.0);
}

TEST_CASE("evaluation uses right-closed cells on (-1, 1]") {
  const auto partition = shared_partition(4);
  Eigen::VectorXd lambda(4);
  lambda << -0.7, -0.2, 0.3, 0.8;
  const auto field = build_field(make_spectrum(lambda), partition);
  const double g1 = partition->gamma[1];
  CHECK(field_eval(field, g1) == field.values[0]);
  CHECK(field_eval(field, std::nextafter(g1, 2.0)) == field.values[1]);
  CHECK(field_eval(field, 1.0) == field.values[3]);
  CHECK(field_eval(field, -0.999999) == field.values[0]);
  CHECK_THROWS_AS(field_eval(field, -1.0), std::domain_error);
  CHECK_THROWS_AS(field_eval(field, 1.0000001), std::domain_error);
}

TEST_CASE("size mismatch is rejected") {
  const auto partition = shared_partition(4);
  Eigen::VectorXd lambda(3);
  lambda << -0.5, 0.0, 0.5;
  CHECK_THROWS_AS(build_field(make_spectrum(lambda), partition), std::invalid_argument);
}

TEST_CASE("constant field has the telescoped coefficients") {
  const int n = 6;
  const auto partition = shared_partition(n);
  FluctuationField field;
  field.partition = partition;
  field.values = Eigen::VectorXd::Constant(n, 1.7);
  const auto s = field_coeffs(field, 5);
  for (int k = 0; k <= 5; ++k) {
    const double expected = (k % 2 == 0) ? 4.0 * 1.7 / (std::numbers::pi * (k + 1)) : 0.0;
    CHECK(s[k] == doctest::Approx(expected).epsilon(1e-14).scale(1.0));
  }
  field.values.setZero();
  const auto zero = field_coeffs(field, 5);
  for (int k = 0; k <= 5; ++k) CHECK(zero[k] == 0.0);
}

TEST_CASE("coefficients are linear in the field") {
  const auto partition = shared_partition(8);
  const auto a = build_field(sample_spectrum(guefield::SamplerKind::tridiag, 8, 3), partition);
  const auto b = build_field(sample_spectrum(guefield::SamplerKind::tridiag, 8, 4), partition);
  FluctuationField sum;
  sum.partition = partition;
  sum.values = a.values + b.values;
  const auto sa = field_coeffs(a, 6);
  const auto sb = field_coeffs(b, 6);
  const auto ssum = field_coeffs(sum, 6);
  for (int k = 0; k <= 6; ++k) {
    CHECK(ssum[k] == doctest::Approx(sa[k] + sb[k]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("exact coefficients agree with the piecewise quadrature oracle") {
  const int n = 8;
  const auto partition = shared_partition(n);
  const auto field =
      build_field(sample_spectrum(guefield::SamplerKind::tridiag, n, 12345), partition);
  const auto s = field_coeffs(field, 5);
  const auto knots = knots_of(partition->gamma);
  // Piece values are read at cell midpoints so the quadrature never sees the
  // jumps at the (right-closed) cell boundaries.
  for (int k = 0; k <= 5; ++k) {
    double ref = 0.0;
    for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
      const double value = field_eval(field, 0.5 * (knots[p] + knots[p + 1]));
      ref += value * oracle::integrate([&](double x) { return guefield::u_eval(k, x); },
                                       knots[p], knots[p + 1], 1e-12);
    }
    ref *= 2.0 / std::numbers::pi;
    CHECK(s[k] == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("counting field with both centerings") {
  Eigen::VectorXd lambda(4);
  lambda << -0.9, -0.1, 0.2, 0.7;
  const auto spectrum = make_spectrum(lambda);
  Eigen::VectorXd grid(3);
  grid << -0.5, 0.0, 0.5;

  const auto semi = build_counting_field(spectrum, grid, Centering::semicircle);
  REQUIRE(semi.raw_counts.size() == 3);
  CHECK(semi.raw_counts[0] == 1.0);
  CHECK(semi.raw_counts[1] == 2.0);
  CHECK(semi.raw_counts[2] == 3.0);
  for (int i = 0; i < 3; ++i) {
    const double expected = semi.raw_counts[i] - 4.0 * guefield::semicircle_cdf(grid[i]);
    CHECK(semi.centered_values[i] == doctest::Approx(expected).epsilon(1e-14).scale(1.0));
    CHECK(semi.raw_counts[i] >= (i > 0 ? semi.raw_counts[i - 1] : 0.0));
  }

  Eigen::VectorXd table(3);
  table << 1.2, 2.1, 2.9;
  const auto ens = build_counting_field(spectrum, grid, Centering::ensemble_mean, &table);
  for (int i = 0; i < 3; ++i) {
    CHECK(ens.centered_values[i] ==
          doctest::Approx(semi.raw_counts[i] - table[i]).epsilon(1e-14).scale(1.0));
  }
  CHECK_THROWS_AS(build_counting_field(spectrum, grid, Centering::ensemble_mean),
                  std::invalid_argument);
  Eigen::VectorXd bad_grid(2);
  bad_grid << 0.0, 1.5;
  CHECK_THROWS_AS(build_counting_field(spectrum, bad_grid, Centering::semicircle),
                  std::domain_error);
}

TEST_CASE("counting coefficients match the piecewise oracle") {
  Eigen::VectorXd lambda(6);
  lambda << -0.8, -0.45, -0.1, 0.15, 0.55, 0.85;
  const auto spectrum = make_spectrum(lambda);
  const auto s = counting_coeffs(spectrum, 5);
  std::vector<double> knots{-1.0};
  for (int i = 0; i < 6; ++i) knots.push_back(lambda[i]);
  knots.push_back(1.0);
  // The height is constant between consecutive knots; read it at the midpoint
  // so the quadrature never sees the jump at a knot itself.
  for (int k = 0; k <= 5; ++k) {
    double ref = 0.0;
    for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
      const double height =
          6 - guefield::counting_function(spectrum, 0.5 * (knots[p] + knots[p + 1]));
      ref += height * oracle::integrate([&](double x) { return guefield::u_eval(k, x); },
                                        knots[p], knots[p + 1], 1e-12);
    }
    ref *= 2.0 / std::numbers::pi;
    CHECK(s[k] == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("integration by parts ties the counting field to linear statistics") {
  // For smooth f with all eigenvalues inside (-1, 1):
  //   sum f(lambda_j) - n int f sigma = -int (count(x) - n G(x)) f'(x) dx.
  const int n = 64;
  const auto spectrum = sample_spectrum(guefield::SamplerKind::tridiag, n, 777);
  REQUIRE(spectrum.lambda[0] > -1.0);
  REQUIRE(spectrum.lambda[n - 1] < 1.0);

  auto f = [](double x) { return guefield::t_eval(3, x); };
  auto fprime = [](double x) { return 3.0 * guefield::u_eval(2, x); };

  double lhs = 0.0;
  for (int j = 0; j < n; ++j) lhs += f(spectrum.lambda[j]);
  // x = cos(theta) turns the semicircle weight into (2/pi) sin^2(theta), which
  // removes the vertical tangents at the endpoints.
  lhs -= n * oracle::integrate(
                 [&](double t) {
                   return f(std::cos(t)) * 2.0 / std::numbers::pi * std::sin(t) * std::sin(t);
                 },
                 0.0, std::numbers::pi, 1e-12);

  std::vector<double> knots{-1.0};
  for (int j = 0; j < n; ++j) knots.push_back(spectrum.lambda[j]);
  knots.push_back(1.0);
  double rhs = 0.0;
  for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
    const double count =
        guefield::counting_function(spectrum, 0.5 * (knots[p] + knots[p + 1]));
    rhs -= oracle::integrate(
        [&](double x) { return (count - n * guefield::semicircle_cdf(x)) * fprime(x); },
        knots[p], knots[p + 1], 1e-10);
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7).scale(1.0));
}

}  // TEST_SUITE

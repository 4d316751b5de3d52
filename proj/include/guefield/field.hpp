#pragma once

#include <memory>

#include <Eigen/Core>

#include "guefield/gue.hpp"
#include "guefield/semicircle.hpp"

namespace guefield {

// Piecewise-constant eigenvalue fluctuation field on the classical-location
// partition: on cell j (0-based, the interval (gamma[j], gamma[j+1]]) the
// field takes the value
//   n * sigma(gamma[j+1]) * (lambda_j - cell_mean[j]).
// The last cell's value is exactly zero because sigma(1) = 0.
struct FluctuationField {
  std::shared_ptr<const SemicirclePartition> partition;
  Eigen::VectorXd values;  // n cell values
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::tridiag;
};

FluctuationField build_field(const Spectrum& spectrum,
                             std::shared_ptr<const SemicirclePartition> partition);

// Value of the field at x in (-1, 1]; cells are right-closed.
double field_eval(const FluctuationField& field, double x);

// Coefficients s_k = (2/pi) int field(x) U_k(x) dx for k = 0..kmax, computed
// exactly by telescoping the antiderivative T_{k+1}/(k+1) across the cells.
Eigen::VectorXd field_coeffs(const FluctuationField& field, int kmax);

enum class Centering { semicircle, ensemble_mean };

// Centered eigenvalue counting function sampled on a grid inside (-1, 1).
struct CountingField {
  Eigen::VectorXd grid;
  Eigen::VectorXd raw_counts;       // #{lambda_j < x} per grid point
  Eigen::VectorXd centered_values;  // raw minus the centering table
  Centering centering = Centering::semicircle;
};

// Semicircle centering subtracts n * G(x); ensemble-mean centering subtracts
// the caller-supplied table (typically a Monte Carlo mean of raw counts).
CountingField build_counting_field(const Spectrum& spectrum, const Eigen::VectorXd& grid,
                                   Centering centering,
                                   const Eigen::VectorXd* center_table = nullptr);

// Coefficients of the raw counting field restricted to (-1, 1) in the height
// orientation h(x) = #{lambda_j >= x}, exact by the same telescoping device
// (h is piecewise constant with jumps at the eigenvalues). This is the
// orientation whose pairing int h(x) f'(x) dx picks up +f(lambda_j) per
// eigenvalue, so the centered sequence tracks the fluctuation-field
// coefficients; the left-counting orientation #{lambda_j < x} flips the sign
// and drifts to the negative of the field instead. Centering is linear, so a
// centered coefficient sequence is the difference of raw sequences.
Eigen::VectorXd counting_coeffs(const Spectrum& spectrum, int kmax);

}  // namespace guefield

#pragma once

#include <functional>

#include <Eigen/Core>

namespace guefield {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Legendre rule on [-1, 1], computed by Newton iteration on the
// Legendre recurrence and cached per node count.
const QuadratureRule& gauss_legendre(int n);

// Integrate f over [a, b] by doubling the Gauss-Legendre node count until
// two successive estimates agree to tol. Throws std::runtime_error if the
// node cap (2^14) is reached without convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-11);

}  // namespace guefield

#pragma once

#include <Eigen/Core>

namespace guefield {

// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag`
// (length n) and subdiagonal `sub` (length n-1), by the implicit-shift QL
// iteration, returned in ascending order. Throws std::runtime_error if an
// eigenvalue fails to converge within the sweep cap.
Eigen::VectorXd tridiagonal_eigenvalues(const Eigen::VectorXd& diag,
                                        const Eigen::VectorXd& sub);

}  // namespace guefield

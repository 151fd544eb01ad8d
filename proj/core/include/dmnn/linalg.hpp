#pragma once

#include <Eigen/Dense>

namespace dmnn {

struct EigResult {
  Eigen::MatrixXd vectors;  // orthonormal columns, A = V * diag(values) * V^T
  Eigen::VectorXd values;   // sorted nonincreasing
};

// Symmetric eigendecomposition by the cyclic Jacobi rotation method.
// The input must be symmetric (checked against a small tolerance); throws
// DomainError otherwise and ConvergenceError if the off-diagonal mass has
// not vanished within `max_sweeps` full sweeps.
EigResult symmetric_eig(const Eigen::MatrixXd& matrix, int max_sweeps = 64);

}  // namespace dmnn

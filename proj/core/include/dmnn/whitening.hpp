#pragma once

#include <Eigen/Dense>
#include <optional>

namespace dmnn {

// Centred PCA-whitening transform z = T (x - mean) with T = Lambda^{-1/2} U^T,
// built from the eigendecomposition of the empirical covariance. After the
// fit, the transformed fit data has identity covariance (up to eigenvalue
// flooring).
struct WhiteningFilter {
  Eigen::VectorXd mean;
  Eigen::MatrixXd transform;    // Lambda^{-1/2} U^T
  Eigen::VectorXd eigenvalues;  // floored, nonincreasing
  double eig_floor = 0.0;       // applied absolute floor
};

// Fits mean, covariance (unbiased) and the whitening transform on the given
// samples (one per column). Eigenvalues below the floor are clamped to it;
// when no floor is given, 1e-8 * lambda_max is used so near-singular
// covariances stay invertible without disturbing well-conditioned ones.
// Requires at least dim+1 samples.
WhiteningFilter fit_whitening(const Eigen::MatrixXd& inputs,
                              std::optional<double> eig_floor = std::nullopt);

Eigen::VectorXd apply_whitening(const WhiteningFilter& filter,
                                const Eigen::VectorXd& x);

// Column-wise batch variant.
Eigen::MatrixXd apply_whitening(const WhiteningFilter& filter,
                                const Eigen::MatrixXd& x);

}  // namespace dmnn

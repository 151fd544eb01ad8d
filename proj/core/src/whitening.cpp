#include "dmnn/whitening.hpp"

#include <cmath>
#include <string>

#include "dmnn/errors.hpp"
#include "dmnn/linalg.hpp"

namespace dmnn {

WhiteningFilter fit_whitening(const Eigen::MatrixXd& inputs,
                              std::optional<double> eig_floor) {
  const int dim = static_cast<int>(inputs.rows());
  const int n = static_cast<int>(inputs.cols());
  if (n < dim + 1) {
    throw DomainError("whitening fit needs at least dim+1 samples, got " +
                      std::to_string(n));
  }
  if (eig_floor && *eig_floor < 0.0) {
    throw DomainError("eig_floor must be nonnegative");
  }

  WhiteningFilter filter;
  filter.mean = inputs.rowwise().mean();
  const Eigen::MatrixXd centred = inputs.colwise() - filter.mean;
  const Eigen::MatrixXd covariance =
      (centred * centred.transpose()) / static_cast<double>(n - 1);

  EigResult eig = symmetric_eig(covariance);

  filter.eig_floor =
      eig_floor ? *eig_floor : 1e-8 * std::max(eig.values(0), 0.0);
  filter.eigenvalues = eig.values.cwiseMax(filter.eig_floor);

  filter.transform =
      filter.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
      eig.vectors.transpose();
  if (!filter.transform.allFinite()) {
    throw NumericalError("whitening transform is not finite; "
                         "covariance is singular and the floor is zero");
  }
  return filter;
}

Eigen::VectorXd apply_whitening(const WhiteningFilter& filter,
                                const Eigen::VectorXd& x) {
  if (x.size() != filter.mean.size()) {
    throw DimensionError("whitening input dimension mismatch");
  }
  return filter.transform * (x - filter.mean);
}

Eigen::MatrixXd apply_whitening(const WhiteningFilter& filter,
                                const Eigen::MatrixXd& x) {
  if (x.rows() != filter.mean.size()) {
    throw DimensionError("whitening input dimension mismatch");
  }
  return filter.transform * (x.colwise() - filter.mean);
}

}  // namespace dmnn

#include "dmnn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

double off_diagonal_sq(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (int p = 0; p < a.rows(); ++p) {
    for (int q = p + 1; q < a.cols(); ++q) {
      sum += 2.0 * a(p, q) * a(p, q);
    }
  }
  return sum;
}

}  // namespace

EigResult symmetric_eig(const Eigen::MatrixXd& matrix, int max_sweeps) {
  const int n = static_cast<int>(matrix.rows());
  if (matrix.cols() != n) {
    throw DimensionError("symmetric_eig requires a square matrix");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if (((matrix - matrix.transpose()).cwiseAbs().maxCoeff()) > 1e-10 * scale) {
    throw DomainError("symmetric_eig requires a symmetric matrix");
  }

  Eigen::MatrixXd a = 0.5 * (matrix + matrix.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double target = 1e-28 * a.squaredNorm();  // off(A)^2 termination

  bool converged = n < 2 || off_diagonal_sq(a) <= target;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;

        // Classic stable rotation: t = sign(theta) / (|theta| + sqrt(theta^2+1)).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = arp - s * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + s * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    converged = off_diagonal_sq(a) <= target;
  }
  if (!converged) {
    throw ConvergenceError("Jacobi eigensolver did not converge within sweep budget");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i) > a(j, j); });

  EigResult result;
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    result.values(i) = a(order[i], order[i]);
    result.vectors.col(i) = v.col(order[i]);
  }
  return result;
}

}  // namespace dmnn

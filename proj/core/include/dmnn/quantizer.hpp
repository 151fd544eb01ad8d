#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace dmnn {

// M-level scalar quantizer fit to a Gaussian source model N(source_mean,
// source_var). Inputs map to the nearest level; cell boundaries are the
// midpoints between adjacent levels.
struct Quantizer {
  std::vector<double> levels;   // strictly increasing
  double source_mean = 0.0;     // upsilon
  double source_var = 1.0;      // varsigma^2
  double distortion = 0.0;      // achieved mean squared quantization error
};

struct GaussianFit {
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

// Pools every scalar component of every sample into one population and
// returns its mean and unbiased variance. Throws DegenerateError when the
// pooled variance is zero.
GaussianFit fit_gaussian(const Eigen::MatrixXd& inputs);

// Mean squared quantization error of the level grid under N(mean, var),
// evaluated by adaptive quadrature over the midpoint cells (absolute
// integration error below 1e-10 for moderate variances). Levels must be
// strictly increasing.
double quantizer_distortion(const std::vector<double>& levels, double mean,
                            double var);

// Analytic derivative of the distortion with respect to each level. The
// midpoint boundary terms cancel, leaving d e/d q_i = 2 (q_i P_i - S_i) with
// P_i the cell probability mass and S_i the cell first moment.
std::vector<double> distortion_gradient(const std::vector<double>& levels,
                                        double mean, double var);

// Minimises the distortion by a damped per-level Newton iteration: each level
// moves by -alpha * gradient/curvature, with alpha halved from 1 until the
// distortion does not increase (floor 2^-20). Stops when max_i |gradient_i|
// drops below `tol`; throws ConvergenceError past `max_iter` iterations.
// Default start is the Gaussian quantile grid q_i = mean + sd * PhiInv((i-1/2)/M).
Quantizer fit_quantizer(double mean, double var, int num_levels,
                        const std::optional<std::vector<double>>& init_levels =
                            std::nullopt,
                        int max_iter = 200, double tol = 1e-10);

// Nearest-level mapping, applied componentwise; exact midpoints resolve to
// the lower level. Idempotent.
double apply_quantizer(const Quantizer& quantizer, double x);
Eigen::VectorXd apply_quantizer(const Quantizer& quantizer,
                                const Eigen::VectorXd& x);
Eigen::MatrixXd apply_quantizer(const Quantizer& quantizer,
                                const Eigen::MatrixXd& x);

// Standard normal helpers shared with the tests.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);  // inverse CDF, p in (0,1)

}  // namespace dmnn

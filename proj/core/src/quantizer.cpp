#include "dmnn/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Midpoint cell boundaries in source units: M+1 values, outer ones infinite.
std::vector<double> cell_bounds(const std::vector<double>& levels) {
  std::vector<double> bounds(levels.size() + 1);
  bounds.front() = -kInf;
  bounds.back() = kInf;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    bounds[i] = 0.5 * (levels[i - 1] + levels[i]);
  }
  return bounds;
}

void check_levels(const std::vector<double>& levels) {
  if (levels.empty()) throw DomainError("quantizer needs at least one level");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] > levels[i - 1])) {
      throw DomainError("quantizer levels must be strictly increasing");
    }
  }
}

double phi_or_zero(double x) { return std::isinf(x) ? 0.0 : normal_pdf(x); }
double x_phi_or_zero(double x) { return std::isinf(x) ? 0.0 : x * normal_pdf(x); }

// Closed-form distortion: per cell, in standardised coordinates u with
// delta = (q - mean)/sd,
//   int_a^b (delta-u)^2 phi(u) du
//     = (delta^2+1) dPhi - 2 delta (phi(a)-phi(b)) + a phi(a) - b phi(b).
double distortion_closed_form(const std::vector<double>& levels, double mean,
                              double var) {
  const double sd = std::sqrt(var);
  const std::vector<double> bounds = cell_bounds(levels);
  double sum = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double delta = (levels[i] - mean) / sd;
    const double a = std::isinf(bounds[i]) ? -kInf : (bounds[i] - mean) / sd;
    const double b =
        std::isinf(bounds[i + 1]) ? kInf : (bounds[i + 1] - mean) / sd;
    const double dphi = (std::isinf(b) ? 1.0 : normal_cdf(b)) -
                        (std::isinf(a) ? 0.0 : normal_cdf(a));
    sum += (delta * delta + 1.0) * dphi -
           2.0 * delta * (phi_or_zero(a) - phi_or_zero(b)) +
           x_phi_or_zero(a) - x_phi_or_zero(b);
  }
  return var * sum;
}

// Diagonal of the distortion Hessian:
//   2 P_i - (m_i - q_i) f(m_i) - (q_i - m_{i-1}) f(m_{i-1}),
// f the source density; infinite boundaries contribute nothing.
std::vector<double> distortion_curvature(const std::vector<double>& levels,
                                         double mean, double var) {
  const double sd = std::sqrt(var);
  const std::vector<double> bounds = cell_bounds(levels);
  std::vector<double> curvature(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double lo = bounds[i];
    const double hi = bounds[i + 1];
    const double mass = (std::isinf(hi) ? 1.0 : normal_cdf((hi - mean) / sd)) -
                        (std::isinf(lo) ? 0.0 : normal_cdf((lo - mean) / sd));
    double value = 2.0 * mass;
    if (!std::isinf(hi)) {
      value -= (hi - levels[i]) * normal_pdf((hi - mean) / sd) / sd;
    }
    if (!std::isinf(lo)) {
      value -= (levels[i] - lo) * normal_pdf((lo - mean) / sd) / sd;
    }
    curvature[i] = value;
  }
  return curvature;
}

double simpson(double (*f)(double, double), double delta, double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a, delta) + 4.0 * f(m, delta) + f(b, delta));
}

double cell_integrand(double u, double delta) {
  const double d = delta - u;
  return d * d * normal_pdf(u);
}

double adaptive_simpson(double delta, double a, double b, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(cell_integrand, delta, a, m);
  const double right = simpson(cell_integrand, delta, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(delta, a, m, left, tol / 2.0, depth - 1) +
         adaptive_simpson(delta, m, b, right, tol / 2.0, depth - 1);
}

}  // namespace

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile requires p in (0,1)");
  }
  // Bisection on the CDF; monotone, deterministic, ample precision.
  double lo = -40.0, hi = 40.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GaussianFit fit_gaussian(const Eigen::MatrixXd& inputs) {
  const auto n = inputs.size();
  if (n < 2) throw DomainError("fit_gaussian needs at least 2 scalar values");
  GaussianFit fit;
  fit.mean = inputs.mean();
  fit.var = (inputs.array() - fit.mean).matrix().squaredNorm() /
            static_cast<double>(n - 1);
  if (fit.var == 0.0) {
    throw DegenerateError("pooled sample variance is zero");
  }
  return fit;
}

double quantizer_distortion(const std::vector<double>& levels, double mean,
                            double var) {
  check_levels(levels);
  if (var <= 0.0) throw DomainError("quantizer_distortion requires var > 0");
  const double sd = std::sqrt(var);
  const std::vector<double> bounds = cell_bounds(levels);
  double sum = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double delta = (levels[i] - mean) / sd;
    // Infinite cell ends are truncated where the integrand mass is far below
    // the 1e-10 accuracy target.
    const double cut = std::abs(delta) + 13.0;
    const double a =
        std::isinf(bounds[i]) ? -cut : (bounds[i] - mean) / sd;
    const double b =
        std::isinf(bounds[i + 1]) ? cut : (bounds[i + 1] - mean) / sd;
    if (b <= a) continue;
    const double whole = simpson(cell_integrand, delta, a, b);
    sum += adaptive_simpson(delta, a, b, whole, 1e-13, 48);
  }
  return var * sum;
}

std::vector<double> distortion_gradient(const std::vector<double>& levels,
                                        double mean, double var) {
  check_levels(levels);
  if (var <= 0.0) throw DomainError("distortion_gradient requires var > 0");
  const double sd = std::sqrt(var);
  const std::vector<double> bounds = cell_bounds(levels);
  std::vector<double> gradient(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double a = std::isinf(bounds[i]) ? -kInf : (bounds[i] - mean) / sd;
    const double b =
        std::isinf(bounds[i + 1]) ? kInf : (bounds[i + 1] - mean) / sd;
    const double mass = (std::isinf(b) ? 1.0 : normal_cdf(b)) -
                        (std::isinf(a) ? 0.0 : normal_cdf(a));
    const double first_moment =
        mean * mass + sd * (phi_or_zero(a) - phi_or_zero(b));
    gradient[i] = 2.0 * (levels[i] * mass - first_moment);
  }
  return gradient;
}

Quantizer fit_quantizer(double mean, double var, int num_levels,
                        const std::optional<std::vector<double>>& init_levels,
                        int max_iter, double tol) {
  if (num_levels < 1) throw DomainError("fit_quantizer requires M >= 1");
  if (var <= 0.0) throw DomainError("fit_quantizer requires var > 0");
  const double sd = std::sqrt(var);

  std::vector<double> levels;
  if (init_levels) {
    levels = *init_levels;
    if (static_cast<int>(levels.size()) != num_levels) {
      throw DimensionError("init_levels size does not match num_levels");
    }
    std::sort(levels.begin(), levels.end());
    check_levels(levels);
  } else {
    levels.resize(num_levels);
    for (int i = 0; i < num_levels; ++i) {
      levels[i] = mean + sd * normal_quantile((i + 0.5) / num_levels);
    }
  }

  constexpr double kMinStep = 0x1.0p-20;
  double current = distortion_closed_form(levels, mean, var);
  for (int iter = 0; iter < max_iter; ++iter) {
    const std::vector<double> gradient = distortion_gradient(levels, mean, var);
    double grad_max = 0.0;
    for (double g : gradient) grad_max = std::max(grad_max, std::abs(g));
    if (grad_max < tol) {
      Quantizer q;
      q.levels = levels;
      q.source_mean = mean;
      q.source_var = var;
      q.distortion = current;
      return q;
    }

    const std::vector<double> curvature =
        distortion_curvature(levels, mean, var);
    std::vector<double> candidate(levels.size());
    for (double alpha = 1.0;; alpha *= 0.5) {
      for (std::size_t i = 0; i < levels.size(); ++i) {
        candidate[i] =
            levels[i] - alpha * gradient[i] / std::max(curvature[i], 1e-12);
      }
      std::sort(candidate.begin(), candidate.end());
      const bool increasing =
          std::adjacent_find(candidate.begin(), candidate.end(),
                             [](double a, double b) { return a >= b; }) ==
          candidate.end();
      if (increasing) {
        const double value = distortion_closed_form(candidate, mean, var);
        if (value <= current || alpha <= kMinStep) {
          levels = candidate;
          current = value;
          break;
        }
      } else if (alpha <= kMinStep) {
        break;  // no usable step this round; retry from the gradient
      }
    }
  }
  throw ConvergenceError("quantizer Newton iteration did not reach tolerance " +
                         std::to_string(tol));
}

double apply_quantizer(const Quantizer& quantizer, double x) {
  const std::vector<double>& levels = quantizer.levels;
  if (levels.size() == 1) return levels[0];
  // Binary search over midpoints m_j = (q_j + q_{j+1})/2 for the first
  // m_j >= x; equality resolves to the lower level.
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const double boundary = 0.5 * (levels[mid] + levels[mid + 1]);
    if (boundary >= x) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return levels[lo];
}

Eigen::VectorXd apply_quantizer(const Quantizer& quantizer,
                                const Eigen::VectorXd& x) {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out(i) = apply_quantizer(quantizer, x(i));
  }
  return out;
}

Eigen::MatrixXd apply_quantizer(const Quantizer& quantizer,
                                const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      out(r, c) = apply_quantizer(quantizer, x(r, c));
    }
  }
  return out;
}

}  // namespace dmnn

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dmnn/mlp.hpp"

namespace dmnn {

// One-vs-rest linear classifier bank: K rows of weights plus one bias each.
struct SvmModel {
  Eigen::MatrixXd weights;  // K x dim
  Eigen::VectorXd bias;     // K
  double c = 1.0;           // hinge penalty weight used at training time
};

// Trains K one-vs-rest linear SVMs by stochastic subgradient descent on
//   0.5 ||w||^2 + C * mean_i hinge(y_i (w.x_i + b)).
// Labels are one-hot columns. Deterministic given the seed (it drives the
// per-epoch sample shuffle).
SvmModel train_svm(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& labels,
                   double c, int epochs, std::uint64_t seed);

// Argmax of the per-class scores, 1-based; ties break to the lowest index.
int classify_svm(const SvmModel& model, const Eigen::VectorXd& x);
std::vector<int> classify_svm(const SvmModel& model, const Eigen::MatrixXd& x);

// Plain MNN baseline: the exact DMNN network and trainer, fit on raw
// (unfiltered) features. The model is initialised from the config seed.
TrainResult train_plain_mnn(const Eigen::MatrixXd& inputs,
                            const Eigen::MatrixXd& labels,
                            const std::vector<LayerSpec>& hidden_layers,
                            const TrainConfig& config);

}  // namespace dmnn

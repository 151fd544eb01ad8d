#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dmnn/rng.hpp"

namespace dmnn {

enum class Activation { linear, sigmoid, relu };

std::string_view activation_name(Activation activation);
std::optional<Activation> activation_from_string(std::string_view name);

struct LayerSpec {
  int width = 0;
  Activation activation = Activation::sigmoid;
};

struct Layer {
  Eigen::MatrixXd weights;  // N_m x N_{m-1}
  Eigen::VectorXd bias;     // N_m
  Activation activation = Activation::sigmoid;
};

// Fully connected network; each layer computes sigma(W r + b).
struct MlpModel {
  std::vector<Layer> layers;

  int input_dim() const {
    return layers.empty() ? 0 : static_cast<int>(layers.front().weights.cols());
  }
  int output_dim() const {
    return layers.empty() ? 0 : static_cast<int>(layers.back().weights.rows());
  }
};

struct TrainConfig {
  double learning_rate = 0.05;
  int batch_size = 32;
  int epochs = 300;
  std::uint64_t seed = 1;
  double init_scale = 1.0;
};

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> bias;
};

struct TrainResult {
  MlpModel model;
  std::vector<double> epoch_loss;  // mean minibatch loss per epoch
};

// Weights ~ N(0, init_scale^2 / fan_in), biases zero. The output layer is
// sigmoidal; hidden layers follow `hidden_layers`. Throws ConfigError on
// nonpositive widths.
MlpModel init_model(int input_dim, const std::vector<LayerSpec>& hidden_layers,
                    int output_dim, Rng& rng, double init_scale = 1.0);

Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& x);
// Batch variant, one sample per column.
Eigen::MatrixXd forward(const MlpModel& model, const Eigen::MatrixXd& x);

// Mean over the batch of the squared L2 error ||f(x) - y||^2.
double loss(const MlpModel& model, const Eigen::MatrixXd& inputs,
            const Eigen::MatrixXd& targets);

// Exact gradients of the batch loss for every weight matrix and bias.
// ReLU takes subgradient 0 at 0.
Gradients backward(const MlpModel& model, const Eigen::MatrixXd& inputs,
                   const Eigen::MatrixXd& targets);

// Shuffled minibatch SGD with a fixed learning rate. Deterministic given the
// config seed; throws DivergenceError when the loss stops being finite.
TrainResult train(const MlpModel& initial, const Eigen::MatrixXd& inputs,
                  const Eigen::MatrixXd& targets, const TrainConfig& config);

// Argmax class over the network output, 1-based; ties break to the lowest
// index.
int classify(const MlpModel& model, const Eigen::VectorXd& x);
std::vector<int> classify(const MlpModel& model, const Eigen::MatrixXd& x);

// Lowest-index argmax of a score vector, 1-based.
int argmax_class(const Eigen::VectorXd& scores);

}  // namespace dmnn

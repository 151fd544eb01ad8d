#include "dmnn/mlp.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

void apply_activation(Activation activation, Eigen::MatrixXd& z) {
  switch (activation) {
    case Activation::linear:
      break;
    case Activation::sigmoid:
      z.array() = ((-z.array()).exp() + 1.0).inverse();
      break;
    case Activation::relu:
      z = z.cwiseMax(0.0);
      break;
  }
}

// Derivative expressed through the activation output itself: sigmoid' =
// a(1-a), relu' = 1[a > 0] (0 at the kink), linear' = 1.
Eigen::ArrayXXd activation_grad(Activation activation,
                                const Eigen::MatrixXd& a) {
  switch (activation) {
    case Activation::linear:
      return Eigen::ArrayXXd::Ones(a.rows(), a.cols());
    case Activation::sigmoid:
      return a.array() * (1.0 - a.array());
    case Activation::relu:
      return (a.array() > 0.0).cast<double>();
  }
  return {};
}

void check_model(const MlpModel& model) {
  if (model.layers.empty()) throw DimensionError("model has no layers");
  for (std::size_t m = 1; m < model.layers.size(); ++m) {
    if (model.layers[m].weights.cols() != model.layers[m - 1].weights.rows()) {
      throw DimensionError("layer dimensions do not chain at layer " +
                           std::to_string(m));
    }
  }
  for (const Layer& layer : model.layers) {
    if (layer.bias.size() != layer.weights.rows()) {
      throw DimensionError("bias size does not match layer width");
    }
  }
}

// Forward pass keeping every activation; activations[0] is the input batch.
std::vector<Eigen::MatrixXd> forward_trace(const MlpModel& model,
                                           const Eigen::MatrixXd& x) {
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(model.layers.size() + 1);
  activations.push_back(x);
  for (const Layer& layer : model.layers) {
    Eigen::MatrixXd z =
        (layer.weights * activations.back()).colwise() + layer.bias;
    apply_activation(layer.activation, z);
    activations.push_back(std::move(z));
  }
  return activations;
}

double batch_loss(const Eigen::MatrixXd& outputs,
                  const Eigen::MatrixXd& targets) {
  return (outputs - targets).squaredNorm() /
         static_cast<double>(outputs.cols());
}

// Backprop from stored activations; writes mean-over-batch gradients and
// returns the batch loss.
double backprop(const MlpModel& model,
                const std::vector<Eigen::MatrixXd>& activations,
                const Eigen::MatrixXd& targets, Gradients& grads) {
  const std::size_t num_layers = model.layers.size();
  const double batch = static_cast<double>(targets.cols());
  const Eigen::MatrixXd& outputs = activations.back();

  Eigen::MatrixXd delta =
      ((2.0 / batch) * (outputs - targets).array() *
       activation_grad(model.layers.back().activation, outputs))
          .matrix();
  for (std::size_t m = num_layers; m-- > 0;) {
    grads.weights[m].noalias() = delta * activations[m].transpose();
    grads.bias[m] = delta.rowwise().sum();
    if (m > 0) {
      delta = ((model.layers[m].weights.transpose() * delta).array() *
               activation_grad(model.layers[m - 1].activation, activations[m]))
                  .matrix();
    }
  }
  return batch_loss(outputs, targets);
}

Gradients make_gradients(const MlpModel& model) {
  Gradients grads;
  grads.weights.resize(model.layers.size());
  grads.bias.resize(model.layers.size());
  for (std::size_t m = 0; m < model.layers.size(); ++m) {
    grads.weights[m].resizeLike(model.layers[m].weights);
    grads.bias[m].resizeLike(model.layers[m].bias);
  }
  return grads;
}

void check_input(const MlpModel& model, const Eigen::MatrixXd& x) {
  if (x.rows() != model.input_dim()) {
    throw DimensionError("input dimension " + std::to_string(x.rows()) +
                         " does not match model input " +
                         std::to_string(model.input_dim()));
  }
}

}  // namespace

std::string_view activation_name(Activation activation) {
  switch (activation) {
    case Activation::linear: return "linear";
    case Activation::sigmoid: return "sigmoid";
    case Activation::relu: return "relu";
  }
  return "?";
}

std::optional<Activation> activation_from_string(std::string_view name) {
  if (name == "linear") return Activation::linear;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "relu") return Activation::relu;
  return std::nullopt;
}

MlpModel init_model(int input_dim, const std::vector<LayerSpec>& hidden_layers,
                    int output_dim, Rng& rng, double init_scale) {
  if (input_dim < 1 || output_dim < 1) {
    throw ConfigError("model input and output dimensions must be positive");
  }
  if (init_scale <= 0.0) throw ConfigError("init_scale must be positive");

  std::vector<LayerSpec> specs = hidden_layers;
  specs.push_back({output_dim, Activation::sigmoid});

  MlpModel model;
  int fan_in = input_dim;
  for (const LayerSpec& spec : specs) {
    if (spec.width < 1) throw ConfigError("layer width must be positive");
    Layer layer;
    layer.activation = spec.activation;
    layer.weights.resize(spec.width, fan_in);
    const double sd = init_scale / std::sqrt(static_cast<double>(fan_in));
    for (int r = 0; r < spec.width; ++r) {
      for (int c = 0; c < fan_in; ++c) {
        layer.weights(r, c) = sd * rng.normal();
      }
    }
    layer.bias = Eigen::VectorXd::Zero(spec.width);
    model.layers.push_back(std::move(layer));
    fan_in = spec.width;
  }
  return model;
}

Eigen::MatrixXd forward(const MlpModel& model, const Eigen::MatrixXd& x) {
  check_model(model);
  check_input(model, x);
  Eigen::MatrixXd a = x;
  for (const Layer& layer : model.layers) {
    Eigen::MatrixXd z = (layer.weights * a).colwise() + layer.bias;
    apply_activation(layer.activation, z);
    a = std::move(z);
  }
  return a;
}

Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& x) {
  return forward(model, Eigen::MatrixXd(x)).col(0);
}

double loss(const MlpModel& model, const Eigen::MatrixXd& inputs,
            const Eigen::MatrixXd& targets) {
  if (inputs.cols() != targets.cols() || inputs.cols() == 0) {
    throw DimensionError("loss needs a nonempty batch with matching sizes");
  }
  return batch_loss(forward(model, inputs), targets);
}

Gradients backward(const MlpModel& model, const Eigen::MatrixXd& inputs,
                   const Eigen::MatrixXd& targets) {
  check_model(model);
  check_input(model, inputs);
  if (inputs.cols() != targets.cols() || inputs.cols() == 0) {
    throw DimensionError("backward needs a nonempty batch with matching sizes");
  }
  Gradients grads = make_gradients(model);
  backprop(model, forward_trace(model, inputs), targets, grads);
  return grads;
}

TrainResult train(const MlpModel& initial, const Eigen::MatrixXd& inputs,
                  const Eigen::MatrixXd& targets, const TrainConfig& config) {
  check_model(initial);
  check_input(initial, inputs);
  if (inputs.cols() != targets.cols() || inputs.cols() == 0) {
    throw DimensionError("train needs a nonempty dataset");
  }
  if (config.learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
  if (config.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (config.epochs < 0) throw ConfigError("epochs must be >= 0");

  TrainResult result;
  result.model = initial;
  const int total = static_cast<int>(inputs.cols());
  const int batch = std::min(config.batch_size, total);

  Rng rng(config.seed);
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);

  Gradients grads = make_gradients(result.model);
  Eigen::MatrixXd batch_x(inputs.rows(), batch);
  Eigen::MatrixXd batch_y(targets.rows(), batch);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    int num_batches = 0;
    for (int start = 0; start < total; start += batch) {
      const int count = std::min(batch, total - start);
      for (int j = 0; j < count; ++j) {
        batch_x.col(j) = inputs.col(order[start + j]);
        batch_y.col(j) = targets.col(order[start + j]);
      }
      const auto x_view = batch_x.leftCols(count);
      const auto y_view = batch_y.leftCols(count);
      loss_sum += backprop(result.model, forward_trace(result.model, x_view),
                           y_view, grads);
      ++num_batches;
      for (std::size_t m = 0; m < result.model.layers.size(); ++m) {
        result.model.layers[m].weights -= config.learning_rate * grads.weights[m];
        result.model.layers[m].bias -= config.learning_rate * grads.bias[m];
      }
    }
    const double epoch_loss = loss_sum / num_batches;
    if (!std::isfinite(epoch_loss)) {
      throw DivergenceError("training loss became non-finite at epoch " +
                            std::to_string(epoch));
    }
    result.epoch_loss.push_back(epoch_loss);
  }
  return result;
}

int argmax_class(const Eigen::VectorXd& scores) {
  int best = 0;
  for (int i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) best = i;
  }
  return best + 1;
}

int classify(const MlpModel& model, const Eigen::VectorXd& x) {
  return argmax_class(forward(model, x));
}

std::vector<int> classify(const MlpModel& model, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd outputs = forward(model, x);
  std::vector<int> ids(outputs.cols());
  for (Eigen::Index c = 0; c < outputs.cols(); ++c) {
    ids[c] = argmax_class(outputs.col(c));
  }
  return ids;
}

}  // namespace dmnn

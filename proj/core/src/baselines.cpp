#include "dmnn/baselines.hpp"

#include <cmath>
#include <numeric>

#include "dmnn/errors.hpp"

namespace dmnn {

SvmModel train_svm(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& labels,
                   double c, int epochs, std::uint64_t seed) {
  const int dim = static_cast<int>(inputs.rows());
  const int total = static_cast<int>(inputs.cols());
  const int classes = static_cast<int>(labels.rows());
  if (total == 0 || labels.cols() != total) {
    throw DimensionError("train_svm needs a nonempty labeled dataset");
  }
  if (c < 0.0) throw DomainError("hinge penalty C must be nonnegative");

  SvmModel model;
  model.weights = Eigen::MatrixXd::Zero(classes, dim);
  model.bias = Eigen::VectorXd::Zero(classes);
  model.c = c;

  Rng rng(seed);
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);

  // Unbiased per-sample subgradient: w <- (1 - eta) w + eta C y x on margin
  // violations, w <- (1 - eta) w otherwise. The step decays roughly per epoch.
  const double eta0 = 0.5;
  std::uint64_t step = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (int idx : order) {
      const double eta =
          eta0 / (1.0 + static_cast<double>(step) / static_cast<double>(total));
      ++step;
      const auto x = inputs.col(idx);
      model.weights *= (1.0 - eta);
      if (c > 0.0) {
        const Eigen::VectorXd scores = model.weights * x + model.bias;
        for (int k = 0; k < classes; ++k) {
          const double y = labels(k, idx) > 0.5 ? 1.0 : -1.0;
          if (y * scores(k) < 1.0) {
            model.weights.row(k) += (eta * c * y) * x.transpose();
            model.bias(k) += eta * c * y;
          }
        }
      }
    }
    if (!model.weights.allFinite() || !model.bias.allFinite()) {
      throw DivergenceError("SVM parameters became non-finite");
    }
  }
  return model;
}

int classify_svm(const SvmModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.weights.cols()) {
    throw DimensionError("svm input dimension mismatch");
  }
  return argmax_class(model.weights * x + model.bias);
}

std::vector<int> classify_svm(const SvmModel& model, const Eigen::MatrixXd& x) {
  if (x.rows() != model.weights.cols()) {
    throw DimensionError("svm input dimension mismatch");
  }
  const Eigen::MatrixXd scores = (model.weights * x).colwise() + model.bias;
  std::vector<int> ids(scores.cols());
  for (Eigen::Index i = 0; i < scores.cols(); ++i) {
    ids[i] = argmax_class(scores.col(i));
  }
  return ids;
}

TrainResult train_plain_mnn(const Eigen::MatrixXd& inputs,
                            const Eigen::MatrixXd& labels,
                            const std::vector<LayerSpec>& hidden_layers,
                            const TrainConfig& config) {
  Rng rng(config.seed);
  const MlpModel model =
      init_model(static_cast<int>(inputs.rows()), hidden_layers,
                 static_cast<int>(labels.rows()), rng, config.init_scale);
  return train(model, inputs, labels, config);
}

}  // namespace dmnn

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dmnn/channel.hpp"
#include "dmnn/geometry.hpp"
#include "dmnn/mlp.hpp"
#include "dmnn/quantizer.hpp"
#include "dmnn/whitening.hpp"

namespace dmnn {

enum class Method { wmnn, qmnn, mnn, svm };

// Upper-case method tag as written to result tables.
std::string_view method_name(Method method);
std::optional<Method> method_from_string(std::string_view name);

using Filter = std::variant<WhiteningFilter, Quantizer>;

// Columnwise filter application; WhiteningFilter transforms, Quantizer snaps
// each component to its grid.
Eigen::MatrixXd apply_filter(const Filter& filter, const Eigen::MatrixXd& x);
Eigen::VectorXd apply_filter(const Filter& filter, const Eigen::VectorXd& x);

struct ExperimentConfig {
  LayoutConfig layout;
  PropagationParams propagation;
  std::vector<LayerSpec> hidden_layers = default_hidden_layers();
  TrainConfig train;
  std::vector<Method> methods = {Method::wmnn, Method::qmnn, Method::mnn,
                                 Method::svm};
  int quant_levels = 10;                   // M
  std::vector<double> snr_grid_db = {0, 5, 10, 15, 20, 25, 30};
  int num_trials = 5;
  int train_samples_per_office = 100;      // N
  int test_samples_per_office = 100;
  double train_snr_db = 20.0;
  double svm_c = 1.0;
  int svm_epochs = 50;
  std::optional<double> eig_floor;         // absolute; default relative floor
  std::uint64_t seed = 1;

  static std::vector<LayerSpec> default_hidden_layers();
};

struct ResultRecord {
  Method method = Method::mnn;
  double snr_db = 0.0;
  std::uint64_t seed = 0;       // per-trial seed
  double misclass_rate = 0.0;
  int n_test = 0;
};

// Fraction of entries where prediction differs from the label; both are
// 1-based class ids. Throws DimensionError on empty or mismatched inputs.
double misclass_rate(const std::vector<int>& predictions,
                     const std::vector<int>& labels);

// 1-based argmax of every one-hot label column.
std::vector<int> label_ids(const Eigen::MatrixXd& labels);

using RecordSink = std::function<void(const ResultRecord&)>;

// Full sweep. Per trial: generate training data at the training SNR, fit the
// decorrelation filters on training inputs only, train every selected method,
// then evaluate on a fresh test set per grid SNR (the method's own filter is
// applied to test inputs before classification). Records stream to `sink` as
// they are produced (trial-major, then method, then SNR) and are also
// returned. Deterministic given the config.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const RecordSink& sink = {});

inline constexpr std::string_view kResultsCsvHeader =
    "method,snr_db,seed,misclass_rate,n_test";

void write_results_csv_header(std::ostream& out);
void write_results_csv_row(std::ostream& out, const ResultRecord& record);
void write_results_csv(std::ostream& out,
                       const std::vector<ResultRecord>& records);

}  // namespace dmnn

#include "dmnn/experiment.hpp"

#include <cstdio>
#include <map>
#include <utility>

#include "dmnn/baselines.hpp"
#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

// Stream tags for per-purpose child seeds inside one trial.
constexpr std::uint64_t kTrainDataStream = 0x545241494eULL;
constexpr std::uint64_t kTestDataStream = 0x54455354ULL;
constexpr std::uint64_t kMlpStream = 0x4d4c50ULL;
constexpr std::uint64_t kSvmStream = 0x53564dULL;

struct TrainedMethod {
  Method method;
  std::optional<Filter> filter;
  std::variant<MlpModel, SvmModel> model;
};

std::vector<int> predict(const TrainedMethod& trained,
                         const Eigen::MatrixXd& inputs) {
  const Eigen::MatrixXd filtered =
      trained.filter ? apply_filter(*trained.filter, inputs) : inputs;
  if (const MlpModel* mlp = std::get_if<MlpModel>(&trained.model)) {
    return classify(*mlp, filtered);
  }
  return classify_svm(std::get<SvmModel>(trained.model), filtered);
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::wmnn: return "WMNN";
    case Method::qmnn: return "QMNN";
    case Method::mnn: return "MNN";
    case Method::svm: return "SVM";
  }
  return "?";
}

std::optional<Method> method_from_string(std::string_view name) {
  if (name == "wmnn" || name == "WMNN") return Method::wmnn;
  if (name == "qmnn" || name == "QMNN") return Method::qmnn;
  if (name == "mnn" || name == "MNN") return Method::mnn;
  if (name == "svm" || name == "SVM") return Method::svm;
  return std::nullopt;
}

std::vector<LayerSpec> ExperimentConfig::default_hidden_layers() {
  return {{100, Activation::relu},
          {200, Activation::sigmoid},
          {100, Activation::sigmoid},
          {50, Activation::sigmoid}};
}

Eigen::MatrixXd apply_filter(const Filter& filter, const Eigen::MatrixXd& x) {
  if (const WhiteningFilter* w = std::get_if<WhiteningFilter>(&filter)) {
    return apply_whitening(*w, x);
  }
  return apply_quantizer(std::get<Quantizer>(filter), x);
}

Eigen::VectorXd apply_filter(const Filter& filter, const Eigen::VectorXd& x) {
  if (const WhiteningFilter* w = std::get_if<WhiteningFilter>(&filter)) {
    return apply_whitening(*w, x);
  }
  return apply_quantizer(std::get<Quantizer>(filter), x);
}

double misclass_rate(const std::vector<int>& predictions,
                     const std::vector<int>& labels) {
  if (predictions.empty() || predictions.size() != labels.size()) {
    throw DimensionError("misclass_rate needs equal-length nonempty inputs");
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] != labels[i]) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(predictions.size());
}

std::vector<int> label_ids(const Eigen::MatrixXd& labels) {
  std::vector<int> ids(labels.cols());
  for (Eigen::Index c = 0; c < labels.cols(); ++c) {
    ids[c] = argmax_class(labels.col(c));
  }
  return ids;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const RecordSink& sink) {
  if (config.snr_grid_db.empty()) throw ConfigError("snr_grid_db is empty");
  if (config.num_trials < 1) throw ConfigError("num_trials must be >= 1");

  const OfficeLayout layout = build_layout(config.layout);
  std::vector<ResultRecord> records;

  for (int trial = 0; trial < config.num_trials; ++trial) {
    const std::uint64_t trial_seed = config.seed + static_cast<std::uint64_t>(trial);

    const Dataset train_set = generate_dataset(
        layout, config.propagation, config.train_samples_per_office,
        config.train_snr_db, mix_seed(trial_seed, kTrainDataStream));

    // All MLP methods share one init/shuffle stream so they differ only in
    // the decorrelation stage.
    TrainConfig mlp_config = config.train;
    mlp_config.seed = mix_seed(trial_seed, kMlpStream);

    std::vector<TrainedMethod> trained;
    trained.reserve(config.methods.size());
    for (Method method : config.methods) {
      TrainedMethod t;
      t.method = method;
      switch (method) {
        case Method::wmnn:
          t.filter = fit_whitening(train_set.inputs, config.eig_floor);
          break;
        case Method::qmnn: {
          const GaussianFit fit = fit_gaussian(train_set.inputs);
          t.filter = fit_quantizer(fit.mean, fit.var, config.quant_levels);
          break;
        }
        case Method::mnn:
        case Method::svm:
          break;
      }
      if (method == Method::svm) {
        t.model = train_svm(train_set.inputs, train_set.labels, config.svm_c,
                            config.svm_epochs, mix_seed(trial_seed, kSvmStream));
      } else {
        const Eigen::MatrixXd inputs =
            t.filter ? apply_filter(*t.filter, train_set.inputs)
                     : train_set.inputs;
        t.model = std::move(
            train_plain_mnn(inputs, train_set.labels, config.hidden_layers,
                            mlp_config)
                .model);
      }
      trained.push_back(std::move(t));
    }

    // One fresh test set per SNR point, shared by all methods.
    std::map<std::pair<int, int>, double> rate;  // (method idx, snr idx)
    int n_test = 0;
    for (std::size_t j = 0; j < config.snr_grid_db.size(); ++j) {
      const Dataset test_set = generate_dataset(
          layout, config.propagation, config.test_samples_per_office,
          config.snr_grid_db[j],
          mix_seed(mix_seed(trial_seed, kTestDataStream), j));
      const std::vector<int> truth = label_ids(test_set.labels);
      n_test = test_set.num_samples();
      for (std::size_t m = 0; m < trained.size(); ++m) {
        rate[{static_cast<int>(m), static_cast<int>(j)}] =
            misclass_rate(predict(trained[m], test_set.inputs), truth);
      }
    }

    for (std::size_t m = 0; m < trained.size(); ++m) {
      for (std::size_t j = 0; j < config.snr_grid_db.size(); ++j) {
        ResultRecord record;
        record.method = trained[m].method;
        record.snr_db = config.snr_grid_db[j];
        record.seed = trial_seed;
        record.misclass_rate =
            rate.at({static_cast<int>(m), static_cast<int>(j)});
        record.n_test = n_test;
        records.push_back(record);
        if (sink) sink(record);
      }
    }
  }
  return records;
}

void write_results_csv_header(std::ostream& out) {
  out << kResultsCsvHeader << '\n';
}

void write_results_csv_row(std::ostream& out, const ResultRecord& record) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "%s,%.10g,%llu,%.10g,%d",
                std::string(method_name(record.method)).c_str(),
                record.snr_db,
                static_cast<unsigned long long>(record.seed),
                record.misclass_rate, record.n_test);
  out << buffer << '\n';
}

void write_results_csv(std::ostream& out,
                       const std::vector<ResultRecord>& records) {
  write_results_csv_header(out);
  for (const ResultRecord& record : records) {
    write_results_csv_row(out, record);
  }
}

}  // namespace dmnn

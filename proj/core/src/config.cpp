#include "dmnn/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

using nlohmann::json;

double parse_snr(const json& value, const std::string& key) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw ConfigError(key + ": only the string \"inf\" is accepted");
  }
  if (!value.is_number()) throw ConfigError(key + " must be a number or \"inf\"");
  return value.get<double>();
}

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  static const std::set<std::string> known = {
      "length_m", "width_m", "office_size_m", "K", "rows", "L", "D", "ps_db",
      "mu", "sigma2", "wall_db", "door_db", "dist_coeff", "N", "snr_db",
      "seed", "hidden_layers", "hidden_activations", "lr", "batch_size",
      "epochs", "init_scale", "methods", "M", "snr_grid_db", "num_trials",
      "n_test", "svm_c", "svm_epochs", "eig_floor"};
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  const auto has = [&root](const char* key) { return root.contains(key); };

  if (has("length_m")) cfg.layout.length_m = get_as<double>(root["length_m"], "length_m");
  if (has("width_m")) cfg.layout.width_m = get_as<double>(root["width_m"], "width_m");
  if (has("office_size_m")) {
    cfg.layout.office_size_m = get_as<double>(root["office_size_m"], "office_size_m");
  }
  if (has("K")) cfg.layout.num_offices = get_as<int>(root["K"], "K");
  if (has("rows")) cfg.layout.rows = get_as<int>(root["rows"], "rows");
  if (has("L")) cfg.layout.num_sensors = get_as<int>(root["L"], "L");

  if (has("ps_db")) {
    cfg.propagation.path_power_db = get_as<std::vector<double>>(root["ps_db"], "ps_db");
    if (cfg.propagation.path_power_db.empty()) {
      throw ConfigError("ps_db must list at least one per-path power");
    }
  }
  if (has("D")) {
    const int d = get_as<int>(root["D"], "D");
    if (d != cfg.propagation.num_paths()) {
      throw ConfigError("D does not match the number of ps_db entries");
    }
  }
  if (has("mu")) cfg.propagation.small_scale_mean = get_as<double>(root["mu"], "mu");
  if (has("sigma2")) {
    cfg.propagation.small_scale_var = get_as<double>(root["sigma2"], "sigma2");
    if (cfg.propagation.small_scale_var < 0.0) {
      throw ConfigError("sigma2 must be nonnegative");
    }
  }
  if (has("wall_db")) cfg.propagation.wall_loss_db = get_as<double>(root["wall_db"], "wall_db");
  if (has("door_db")) cfg.propagation.door_loss_db = get_as<double>(root["door_db"], "door_db");
  if (has("dist_coeff")) {
    cfg.propagation.distance_coeff = get_as<double>(root["dist_coeff"], "dist_coeff");
  }

  if (has("N")) cfg.train_samples_per_office = get_as<int>(root["N"], "N");
  if (has("snr_db")) cfg.train_snr_db = parse_snr(root["snr_db"], "snr_db");
  if (has("seed")) cfg.seed = get_as<std::uint64_t>(root["seed"], "seed");

  if (has("hidden_layers")) {
    const auto widths = get_as<std::vector<int>>(root["hidden_layers"], "hidden_layers");
    cfg.hidden_layers.clear();
    for (std::size_t i = 0; i < widths.size(); ++i) {
      // Default pattern: first hidden layer ReLU, the rest sigmoidal.
      cfg.hidden_layers.push_back(
          {widths[i], i == 0 ? Activation::relu : Activation::sigmoid});
    }
  }
  if (has("hidden_activations")) {
    const auto names =
        get_as<std::vector<std::string>>(root["hidden_activations"], "hidden_activations");
    if (names.size() != cfg.hidden_layers.size()) {
      throw ConfigError("hidden_activations size must match hidden_layers");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto activation = activation_from_string(names[i]);
      if (!activation) throw ConfigError("unknown activation '" + names[i] + "'");
      cfg.hidden_layers[i].activation = *activation;
    }
  }

  if (has("lr")) cfg.train.learning_rate = get_as<double>(root["lr"], "lr");
  if (has("batch_size")) cfg.train.batch_size = get_as<int>(root["batch_size"], "batch_size");
  if (has("epochs")) cfg.train.epochs = get_as<int>(root["epochs"], "epochs");
  if (has("init_scale")) cfg.train.init_scale = get_as<double>(root["init_scale"], "init_scale");

  if (has("methods")) {
    const auto names = get_as<std::vector<std::string>>(root["methods"], "methods");
    if (names.empty()) throw ConfigError("methods must not be empty");
    cfg.methods.clear();
    for (const std::string& name : names) {
      const auto method = method_from_string(name);
      if (!method) throw ConfigError("unknown method '" + name + "'");
      cfg.methods.push_back(*method);
    }
  }

  if (has("M")) cfg.quant_levels = get_as<int>(root["M"], "M");
  if (has("snr_grid_db")) {
    cfg.snr_grid_db.clear();
    if (!root["snr_grid_db"].is_array() || root["snr_grid_db"].empty()) {
      throw ConfigError("snr_grid_db must be a nonempty array");
    }
    for (const json& value : root["snr_grid_db"]) {
      cfg.snr_grid_db.push_back(parse_snr(value, "snr_grid_db"));
    }
  }
  if (has("num_trials")) cfg.num_trials = get_as<int>(root["num_trials"], "num_trials");
  if (has("n_test")) cfg.test_samples_per_office = get_as<int>(root["n_test"], "n_test");
  if (has("svm_c")) cfg.svm_c = get_as<double>(root["svm_c"], "svm_c");
  if (has("svm_epochs")) cfg.svm_epochs = get_as<int>(root["svm_epochs"], "svm_epochs");
  if (has("eig_floor")) cfg.eig_floor = get_as<double>(root["eig_floor"], "eig_floor");

  if (cfg.train_samples_per_office < 1) throw ConfigError("N must be >= 1");
  if (cfg.test_samples_per_office < 1) throw ConfigError("n_test must be >= 1");
  if (cfg.quant_levels < 1) throw ConfigError("M must be >= 1");
  if (cfg.num_trials < 1) throw ConfigError("num_trials must be >= 1");

  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str());
}

}  // namespace dmnn

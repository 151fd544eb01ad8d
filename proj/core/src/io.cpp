#include "dmnn/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

using nlohmann::json;

constexpr const char* kFilterMagic = "dmnn-filter";
constexpr const char* kModelMagic = "dmnn-model";
constexpr int kFormatVersion = 1;

template <typename T>
T read_token(std::istream& in, const char* what) {
  T value;
  if (!(in >> value)) throw IoError(std::string("truncated input, expected ") + what);
  return value;
}

double read_double(std::istream& in, const char* what) {
  return read_token<double>(in, what);
}

void write_header(std::ostream& out, const char* magic, const char* kind) {
  out << magic << ' ' << kFormatVersion << ' ' << kind << '\n';
}

std::string read_kind(std::istream& in, const char* magic) {
  const auto word = read_token<std::string>(in, "format magic");
  if (word != magic) throw IoError("bad magic '" + word + "'");
  const int version = read_token<int>(in, "format version");
  if (version != kFormatVersion) {
    throw IoError("unsupported format version " + std::to_string(version));
  }
  return read_token<std::string>(in, "format kind");
}

void write_matrix_rows(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c ? " " : "") << format_double(m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in, Eigen::Index rows,
                            Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = read_double(in, "matrix entry");
    }
  }
  return m;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

json snr_to_json(double snr_db) {
  if (std::isinf(snr_db)) return "inf";
  return snr_db;
}

double snr_from_json(const json& value) {
  if (value.is_string() && value.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  return value.get<double>();
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

void save_dataset_csv(const std::string& path, const Dataset& dataset) {
  std::ofstream out = open_output(path);
  out << "office,sample";
  for (int f = 0; f < dataset.feature_dim(); ++f) out << ",feat_" << f;
  out << '\n';
  const int per_office = dataset.meta.samples_per_office;
  for (int col = 0; col < dataset.num_samples(); ++col) {
    out << (col / per_office + 1) << ',' << (col % per_office);
    for (int f = 0; f < dataset.feature_dim(); ++f) {
      out << ',' << format_double(dataset.inputs(f, col));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);

  json meta;
  meta["K"] = dataset.meta.num_offices;
  meta["L"] = dataset.meta.num_sensors;
  meta["D"] = dataset.meta.num_paths;
  meta["N"] = dataset.meta.samples_per_office;
  meta["snr_db"] = snr_to_json(dataset.meta.snr_db);
  meta["seed"] = dataset.meta.seed;
  meta["feature_dim"] = dataset.feature_dim();
  std::ofstream meta_out = open_output(path + ".meta.json");
  meta_out << meta.dump(2) << '\n';
}

Dataset load_dataset_csv(const std::string& path) {
  json meta;
  {
    std::ifstream meta_in = open_input(path + ".meta.json");
    try {
      meta_in >> meta;
    } catch (const json::exception& e) {
      throw IoError(std::string("bad dataset metadata: ") + e.what());
    }
  }

  Dataset ds;
  try {
    ds.meta.num_offices = meta.at("K").get<int>();
    ds.meta.num_sensors = meta.at("L").get<int>();
    ds.meta.num_paths = meta.at("D").get<int>();
    ds.meta.samples_per_office = meta.at("N").get<int>();
    ds.meta.snr_db = snr_from_json(meta.at("snr_db"));
    ds.meta.seed = meta.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad dataset metadata: ") + e.what());
  }

  const int dim = 2 * ds.meta.num_paths * ds.meta.num_sensors;
  const int total = ds.meta.num_offices * ds.meta.samples_per_office;
  ds.inputs.resize(dim, total);
  ds.labels = Eigen::MatrixXd::Zero(ds.meta.num_offices, total);

  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty dataset file: " + path);

  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    if (!std::getline(fields, field, ',')) throw IoError("bad dataset row");
    const int office = std::atoi(field.c_str());
    if (!std::getline(fields, field, ',')) throw IoError("bad dataset row");
    const int sample = std::atoi(field.c_str());
    if (office < 1 || office > ds.meta.num_offices || sample < 0 ||
        sample >= ds.meta.samples_per_office) {
      throw IoError("dataset row indices out of range: " + line);
    }
    const int col = (office - 1) * ds.meta.samples_per_office + sample;
    for (int f = 0; f < dim; ++f) {
      if (!std::getline(fields, field, ',')) {
        throw IoError("dataset row has too few features");
      }
      ds.inputs(f, col) = std::strtod(field.c_str(), nullptr);
    }
    ds.labels(office - 1, col) = 1.0;
    ++rows;
  }
  if (rows != total) {
    throw IoError("dataset row count " + std::to_string(rows) +
                  " does not match metadata total " + std::to_string(total));
  }
  return ds;
}

void save_filter(std::ostream& out, const Filter& filter) {
  if (const WhiteningFilter* w = std::get_if<WhiteningFilter>(&filter)) {
    write_header(out, kFilterMagic, "whitening");
    const Eigen::Index dim = w->mean.size();
    out << dim << '\n' << format_double(w->eig_floor) << '\n';
    write_matrix_rows(out, w->mean.transpose());
    write_matrix_rows(out, w->eigenvalues.transpose());
    write_matrix_rows(out, w->transform);
    return;
  }
  const Quantizer& q = std::get<Quantizer>(filter);
  write_header(out, kFilterMagic, "quantizer");
  out << q.levels.size() << '\n';
  out << format_double(q.source_mean) << ' ' << format_double(q.source_var)
      << ' ' << format_double(q.distortion) << '\n';
  for (std::size_t i = 0; i < q.levels.size(); ++i) {
    out << (i ? " " : "") << format_double(q.levels[i]);
  }
  out << '\n';
}

Filter load_filter(std::istream& in) {
  const std::string kind = read_kind(in, kFilterMagic);
  if (kind == "whitening") {
    WhiteningFilter w;
    const auto dim = read_token<Eigen::Index>(in, "dimension");
    if (dim < 1) throw IoError("bad whitening dimension");
    w.eig_floor = read_double(in, "eig_floor");
    w.mean = read_matrix(in, 1, dim).transpose();
    w.eigenvalues = read_matrix(in, 1, dim).transpose();
    w.transform = read_matrix(in, dim, dim);
    return w;
  }
  if (kind == "quantizer") {
    Quantizer q;
    const auto levels = read_token<std::size_t>(in, "level count");
    if (levels < 1) throw IoError("bad quantizer level count");
    q.source_mean = read_double(in, "source mean");
    q.source_var = read_double(in, "source var");
    q.distortion = read_double(in, "distortion");
    q.levels.resize(levels);
    for (double& level : q.levels) level = read_double(in, "level");
    return q;
  }
  throw IoError("unknown filter kind '" + kind + "'");
}

void save_model(std::ostream& out, const AnyModel& model) {
  if (const MlpModel* mlp = std::get_if<MlpModel>(&model)) {
    write_header(out, kModelMagic, "mlp");
    out << mlp->input_dim() << ' ' << mlp->layers.size() << '\n';
    for (const Layer& layer : mlp->layers) {
      out << layer.weights.rows() << ' ' << activation_name(layer.activation)
          << '\n';
      write_matrix_rows(out, layer.weights);
      write_matrix_rows(out, layer.bias.transpose());
    }
    return;
  }
  const SvmModel& svm = std::get<SvmModel>(model);
  write_header(out, kModelMagic, "svm");
  out << svm.weights.rows() << ' ' << svm.weights.cols() << '\n';
  out << format_double(svm.c) << '\n';
  write_matrix_rows(out, svm.weights);
  write_matrix_rows(out, svm.bias.transpose());
}

AnyModel load_model(std::istream& in) {
  const std::string kind = read_kind(in, kModelMagic);
  if (kind == "mlp") {
    MlpModel mlp;
    auto fan_in = read_token<Eigen::Index>(in, "input dimension");
    const auto num_layers = read_token<std::size_t>(in, "layer count");
    if (fan_in < 1 || num_layers < 1) throw IoError("bad mlp shape");
    for (std::size_t m = 0; m < num_layers; ++m) {
      Layer layer;
      const auto width = read_token<Eigen::Index>(in, "layer width");
      if (width < 1) throw IoError("bad layer width");
      const auto name = read_token<std::string>(in, "activation");
      const auto activation = activation_from_string(name);
      if (!activation) throw IoError("unknown activation '" + name + "'");
      layer.activation = *activation;
      layer.weights = read_matrix(in, width, fan_in);
      layer.bias = read_matrix(in, 1, width).transpose();
      mlp.layers.push_back(std::move(layer));
      fan_in = width;
    }
    return mlp;
  }
  if (kind == "svm") {
    SvmModel svm;
    const auto classes = read_token<Eigen::Index>(in, "class count");
    const auto dim = read_token<Eigen::Index>(in, "dimension");
    if (classes < 1 || dim < 1) throw IoError("bad svm shape");
    svm.c = read_double(in, "C");
    svm.weights = read_matrix(in, classes, dim);
    svm.bias = read_matrix(in, 1, classes).transpose();
    return svm;
  }
  throw IoError("unknown model kind '" + kind + "'");
}

void save_filter(const std::string& path, const Filter& filter) {
  std::ofstream out = open_output(path);
  save_filter(out, filter);
  if (!out) throw IoError("write failed: " + path);
}

Filter load_filter(const std::string& path) {
  std::ifstream in = open_input(path);
  return load_filter(in);
}

void save_model(const std::string& path, const AnyModel& model) {
  std::ofstream out = open_output(path);
  save_model(out, model);
  if (!out) throw IoError("write failed: " + path);
}

AnyModel load_model(const std::string& path) {
  std::ifstream in = open_input(path);
  return load_model(in);
}

}  // namespace dmnn

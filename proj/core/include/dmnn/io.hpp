#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "dmnn/baselines.hpp"
#include "dmnn/channel.hpp"
#include "dmnn/experiment.hpp"
#include "dmnn/mlp.hpp"

namespace dmnn {

// Shortest decimal form that parses back to the identical double, so every
// text format round-trips bit-exactly.
std::string format_double(double value);

// Dataset CSV: header `office,sample,feat_0..feat_{dim-1}`, one row per
// sample (1-based office id, 0-based sample index within the office), plus a
// sidecar JSON metadata file at `<path>.meta.json`.
void save_dataset_csv(const std::string& path, const Dataset& dataset);
Dataset load_dataset_csv(const std::string& path);

// Versioned flat text formats. Filters: whitening (mean + transform +
// eigenvalues) or quantizer (levels + source moments). Models: MLP layer
// stack or linear SVM bank.
void save_filter(std::ostream& out, const Filter& filter);
void save_filter(const std::string& path, const Filter& filter);
Filter load_filter(std::istream& in);
Filter load_filter(const std::string& path);

using AnyModel = std::variant<MlpModel, SvmModel>;

void save_model(std::ostream& out, const AnyModel& model);
void save_model(const std::string& path, const AnyModel& model);
AnyModel load_model(std::istream& in);
AnyModel load_model(const std::string& path);

}  // namespace dmnn

#include "harsanyi/model_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "harsanyi/error.hpp"
#include "harsanyi/lattice_io.hpp"

namespace harsanyi::io {
namespace {

using nlohmann::json;

constexpr int kContainerVersion = 1;

json parse(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

const json& require(const json& obj, const char* key, std::string_view what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(std::string(what) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         std::string_view what) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw FormatError(std::string(what) + ": unexpected field '" + item.key() + "'");
    }
  }
}

void check_version(const json& obj, std::string_view what) {
  const json& v = require(obj, "version", what);
  if (!v.is_number_integer() || v.get<int>() != kContainerVersion) {
    throw FormatError(std::string(what) + ": unsupported version");
  }
}

std::size_t get_size(const json& obj, const char* key, std::string_view what) {
  const json& v = require(obj, key, what);
  if (!v.is_number_unsigned()) {
    throw FormatError(std::string(what) + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double parse_real(const json& v, std::string_view what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE) {
      throw FormatError(std::string(what) + ": bad real literal '" + s + "'");
    }
    return x;
  }
  throw FormatError(std::string(what) + ": expected a real number");
}

std::vector<double> get_reals(const json& obj, const char* key, std::string_view what) {
  const json& arr = require(obj, key, what);
  if (!arr.is_array()) throw FormatError(std::string(what) + ": '" + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(parse_real(v, what));
  return out;
}

template <class Fn>
auto rethrow_as_format(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string model_to_text(const PortableModel& model) {
  json layers = json::array();
  for (const DenseLayer& layer : model.layers()) {
    layers.push_back({{"rows", layer.rows},
                      {"cols", layer.cols},
                      {"activation", std::string(activation_name(layer.activation))},
                      {"weights", layer.weights},
                      {"bias", layer.bias}});
  }
  json doc = {{"version", kContainerVersion},
              {"input_dim", model.input_dim()},
              {"output_dim", model.output_dim()},
              {"layers", layers}};
  return doc.dump(1) + "\n";
}

PortableModel model_from_text(std::string_view text) {
  constexpr std::string_view what = "model";
  const json doc = parse(text, what);
  return rethrow_as_format(what, [&] {
    reject_unknown_keys(doc, {"version", "input_dim", "output_dim", "layers"}, what);
    check_version(doc, what);
    const json& arr = require(doc, "layers", what);
    if (!arr.is_array()) throw FormatError("model: 'layers' must be an array");
    std::vector<DenseLayer> layers;
    for (const json& item : arr) {
      reject_unknown_keys(item, {"rows", "cols", "activation", "weights", "bias"}, what);
      DenseLayer layer;
      layer.rows = get_size(item, "rows", what);
      layer.cols = get_size(item, "cols", what);
      layer.activation = parse_activation(require(item, "activation", what).get<std::string>());
      layer.weights = get_reals(item, "weights", what);
      layer.bias = get_reals(item, "bias", what);
      layers.push_back(std::move(layer));
    }
    return PortableModel(get_size(doc, "input_dim", what), get_size(doc, "output_dim", what),
                         std::move(layers));
  });
}

std::string probe_to_text(const ProbeClassifier& probe) {
  json doc = {{"version", kContainerVersion},
              {"classes", probe.classes},
              {"feature_dim", probe.feature_dim},
              {"W", probe.weights},
              {"b", probe.bias}};
  return doc.dump(1) + "\n";
}

ProbeClassifier probe_from_text(std::string_view text) {
  constexpr std::string_view what = "probe";
  const json doc = parse(text, what);
  return rethrow_as_format(what, [&] {
    reject_unknown_keys(doc, {"version", "classes", "feature_dim", "W", "b"}, what);
    check_version(doc, what);
    ProbeClassifier probe;
    probe.classes = static_cast<int>(get_size(doc, "classes", what));
    probe.feature_dim = get_size(doc, "feature_dim", what);
    probe.weights = get_reals(doc, "W", what);
    probe.bias = get_reals(doc, "b", what);
    probe.validate();
    return probe;
  });
}

std::string dataset_to_text(const Dataset& dataset) {
  std::vector<std::size_t> boundaries{0};
  for (std::size_t size : dataset.slice_sizes) boundaries.push_back(boundaries.back() + size);
  json samples = json::array();
  for (const Sample& s : dataset.samples) {
    samples.push_back({{"label", s.label}, {"x", s.flatten()}});
  }
  json doc = {{"version", kContainerVersion}, {"boundaries", boundaries}, {"samples", samples}};
  if (dataset.baseline) {
    Sample flat{dataset.baseline->variables, 0};
    doc["baseline"] = flat.flatten();
  }
  return doc.dump(1) + "\n";
}

Dataset dataset_from_text(std::string_view text) {
  constexpr std::string_view what = "dataset";
  const json doc = parse(text, what);
  return rethrow_as_format(what, [&] {
    reject_unknown_keys(doc, {"version", "boundaries", "samples", "baseline"}, what);
    check_version(doc, what);
    const auto boundaries = require(doc, "boundaries", what).get<std::vector<std::size_t>>();
    if (boundaries.size() < 2 || boundaries.front() != 0) {
      throw FormatError("dataset: boundaries must start at 0 and define at least one variable");
    }
    std::vector<std::size_t> sizes;
    for (std::size_t k = 1; k < boundaries.size(); ++k) {
      if (boundaries[k] <= boundaries[k - 1]) {
        throw FormatError("dataset: boundaries must be strictly increasing");
      }
      sizes.push_back(boundaries[k] - boundaries[k - 1]);
    }
    std::vector<std::vector<double>> inputs;
    std::vector<int> labels;
    const json& samples = require(doc, "samples", what);
    if (!samples.is_array()) throw FormatError("dataset: 'samples' must be an array");
    for (const json& s : samples) {
      reject_unknown_keys(s, {"label", "x"}, what);
      const json& label = require(s, "label", what);
      if (!label.is_number_integer() || label.get<int>() < 0) {
        throw FormatError("dataset: label must be a non-negative integer");
      }
      labels.push_back(label.get<int>());
      inputs.push_back(get_reals(s, "x", what));
      for (double x : inputs.back()) {
        if (!std::isfinite(x)) throw FormatError("dataset: non-finite input value");
      }
    }
    Dataset ds = Dataset::from_flat(std::move(sizes), inputs, labels);
    if (doc.contains("baseline")) {
      const std::vector<double> flat = get_reals(doc, "baseline", what);
      const Dataset b = Dataset::from_flat(ds.slice_sizes, std::span(&flat, 1), std::vector<int>{0});
      ds.baseline = BaselineVector{b.samples.front().variables};
    }
    return ds;
  });
}

PortableModel read_model(const std::filesystem::path& path) { return model_from_text(read_file(path)); }
ProbeClassifier read_probe(const std::filesystem::path& path) { return probe_from_text(read_file(path)); }
Dataset read_dataset(const std::filesystem::path& path) { return dataset_from_text(read_file(path)); }

}  // namespace harsanyi::io

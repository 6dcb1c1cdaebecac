#include "harsanyi/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "harsanyi/error.hpp"

namespace harsanyi {

std::string_view activation_name(Activation a) {
  return a == Activation::kRelu ? "relu" : "identity";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "identity") return Activation::kIdentity;
  throw InvalidArgument("unknown activation '" + std::string(name) + "'");
}

PortableModel::PortableModel(std::size_t input_dim, std::size_t output_dim,
                             std::vector<DenseLayer> layers)
    : input_dim_(input_dim), output_dim_(output_dim), layers_(std::move(layers)) {
  if (layers_.empty()) throw InvalidArgument("model needs at least one layer");
  std::size_t width = input_dim_;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const DenseLayer& layer = layers_[k];
    const std::string where = "layer " + std::to_string(k);
    if (layer.cols != width) {
      throw InvalidArgument(where + ": expects " + std::to_string(layer.cols) +
                            " inputs but previous width is " + std::to_string(width));
    }
    if (layer.rows == 0) throw InvalidArgument(where + ": zero rows");
    if (layer.weights.size() != layer.rows * layer.cols) {
      throw InvalidArgument(where + ": weight count does not equal rows*cols");
    }
    if (layer.bias.size() != layer.rows) throw InvalidArgument(where + ": bias length != rows");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(layer.weights.begin(), layer.weights.end(), finite) ||
        !std::all_of(layer.bias.begin(), layer.bias.end(), finite)) {
      throw InvalidArgument(where + ": non-finite parameter");
    }
    width = layer.rows;
  }
  if (width != output_dim_) throw InvalidArgument("last layer width != output_dim");
  if (layers_.back().activation != Activation::kIdentity) {
    throw InvalidArgument("final layer must be identity (logits)");
  }
}

std::size_t PortableModel::feature_dim() const {
  return layers_.size() >= 2 ? layers_.back().cols : 0;
}

std::vector<double> apply_layer(const DenseLayer& layer, std::span<const double> x) {
  std::vector<double> y(layer.rows);
  for (std::size_t r = 0; r < layer.rows; ++r) {
    const double* w = layer.weights.data() + r * layer.cols;
    double acc = layer.bias[r];
    for (std::size_t c = 0; c < layer.cols; ++c) acc += w[c] * x[c];
    y[r] = (layer.activation == Activation::kRelu && acc < 0.0) ? 0.0 : acc;
  }
  return y;
}

namespace {

void check_finite(std::span<const double> xs, std::size_t layer_index) {
  for (double v : xs) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("non-finite activation after layer " + std::to_string(layer_index));
    }
  }
}

}  // namespace

std::vector<double> PortableModel::forward(std::span<const double> input) const {
  if (input.size() != input_dim_) {
    throw InvalidArgument("input width " + std::to_string(input.size()) + " != model input_dim " +
                          std::to_string(input_dim_));
  }
  std::vector<double> x(input.begin(), input.end());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    x = apply_layer(layers_[k], x);
    check_finite(x, k);
  }
  return x;
}

std::vector<double> PortableModel::penultimate_features(std::span<const double> input) const {
  if (layers_.size() < 2) {
    throw InvalidArgument("single-layer model has no penultimate features");
  }
  if (input.size() != input_dim_) throw InvalidArgument("input width != model input_dim");
  std::vector<double> x(input.begin(), input.end());
  for (std::size_t k = 0; k + 1 < layers_.size(); ++k) {
    x = apply_layer(layers_[k], x);
    check_finite(x, k);
  }
  return x;
}

bool operator==(const PortableModel& a, const PortableModel& b) {
  if (a.input_dim_ != b.input_dim_ || a.output_dim_ != b.output_dim_ ||
      a.layers_.size() != b.layers_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.layers_.size(); ++k) {
    const DenseLayer& x = a.layers_[k];
    const DenseLayer& y = b.layers_[k];
    if (x.rows != y.rows || x.cols != y.cols || x.activation != y.activation ||
        x.weights != y.weights || x.bias != y.bias) {
      return false;
    }
  }
  return true;
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw InvalidArgument("softmax of empty vector");
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    p[k] = std::exp(logits[k] - top);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace harsanyi

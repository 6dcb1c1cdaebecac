#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace harsanyi {

enum class Activation { kRelu, kIdentity };

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

/// Dense layer y = act(W x + b), W stored row-major with shape rows x cols.
struct DenseLayer {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Activation activation = Activation::kIdentity;
  std::vector<double> weights;
  std::vector<double> bias;
};

/// Feed-forward network of dense layers ending in class logits.
///
/// Construction validates that layer shapes chain from input_dim to
/// output_dim, that the last layer is linear, and that every parameter is
/// finite. Instances are immutable afterwards.
class PortableModel {
 public:
  PortableModel(std::size_t input_dim, std::size_t output_dim, std::vector<DenseLayer> layers);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  /// Width of f(x), the activations feeding the final linear layer.
  std::size_t feature_dim() const;

  /// Class logits. Throws on a wrong input width or a non-finite activation.
  std::vector<double> forward(std::span<const double> input) const;

  /// Post-activation output of the layer preceding the classifier.
  /// Requires at least two layers.
  std::vector<double> penultimate_features(std::span<const double> input) const;

  friend bool operator==(const PortableModel&, const PortableModel&);

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  std::vector<DenseLayer> layers_;
};

/// y = act(W x + b) for a single layer.
std::vector<double> apply_layer(const DenseLayer& layer, std::span<const double> x);

/// Numerically stable softmax; output sums to 1.
std::vector<double> softmax(std::span<const double> logits);

}  // namespace harsanyi

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include <json.hpp>

#include "harsanyi/dataset.hpp"
#include "harsanyi/model.hpp"
#include "harsanyi/probe.hpp"

namespace harsanyi::toy {

/// Hyperparameters of the generated pretrain / fine-tune / scratch scenario.
///
/// Each of the n variables is a short vector that either carries a fixed
/// prototype ("present") or not, plus Gaussian noise. The pretraining task
/// has 16 classes formed by four AND concepts over variables (0,1), (2,3),
/// (4,5) and (6,7); the downstream task only reads the first two concepts.
struct ToyConfig {
  int variables = 10;
  int slice_width = 3;
  int classes = 2;  // downstream classes, 2..4
  std::uint64_t seed = 0;
  std::vector<std::size_t> hidden = {48, 32};
  double noise = 0.15;
  int pretrain_samples = 6000;
  int pretrain_epochs = 30;
  int train_samples = 120;
  int test_samples = 400;
  int finetune_epochs = 20;
  double lr = 0.05;
  double momentum = 0.9;
  double weight_decay = 0.01;
  int batch = 32;
  // Masked variables take the "absent" value (zero slice) rather than the
  // train-set mean; stored as the dataset baseline override.
  bool zero_baseline = true;

  void validate() const;
  nlohmann::ordered_json to_json() const;
  static ToyConfig from_json(const nlohmann::json& j);
};

inline constexpr int kMinToyVariables = 8;
inline constexpr int kMaxToyVariables = 12;
inline constexpr int kPretrainClasses = 16;

struct ToySuite {
  ToyConfig config;
  Dataset train;  // downstream, small
  Dataset test;   // downstream, held out
  PortableModel pretrain;
  ProbeClassifier probe;  // on pretrain's penultimate features, downstream labels
  std::vector<PortableModel> finetune_checkpoints;  // after epochs 1..E
  std::vector<PortableModel> random_checkpoints;
  std::vector<double> finetune_accuracy;  // held-out, per epoch
  std::vector<double> random_accuracy;
  double pretrain_accuracy = 0.0;  // held-out on the pretraining task
  double probe_accuracy = 0.0;     // held-out on the downstream task

  const PortableModel& finetune() const { return finetune_checkpoints.back(); }
  const PortableModel& random() const { return random_checkpoints.back(); }
};

/// Deterministic for a given config (single-threaded).
ToySuite generate_toy_suite(const ToyConfig& config);

/// Writes data/, models/, checkpoints/<variant>/epoch_NNN.json and a
/// manifest. Throws UsageError if `dir` exists and `force` is false.
void write_toy_suite(const ToySuite& suite, const std::filesystem::path& dir, bool force);

/// Reads a suite back, verifying every file against the manifest.
ToySuite read_toy_suite(const std::filesystem::path& dir);

struct SgdConfig {
  double lr = 0.05;
  double momentum = 0.9;
  int batch = 32;
  std::uint64_t seed = 0;
  double weight_decay = 0.0;  // L2 on weights, not biases
};

/// Minibatch SGD with momentum on softmax cross-entropy. Calls on_epoch with
/// the model after each epoch and returns the final model.
PortableModel train_classifier(PortableModel model, const std::vector<std::vector<double>>& inputs,
                               const std::vector<int>& labels, int epochs, const SgdConfig& sgd,
                               const std::function<void(int, const PortableModel&)>& on_epoch = {});

/// Argmax accuracy of the model on the dataset.
double accuracy(const PortableModel& model, const Dataset& data);

/// He-initialised relu MLP with the given hidden widths and a linear head.
PortableModel random_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                         std::size_t outputs, std::uint64_t seed);

/// Single linear layer with random weights: its log-odds are additive in the
/// input variables for two classes.
PortableModel random_linear_model(std::size_t input_dim, std::size_t outputs, double scale,
                                  std::uint64_t seed);

/// Downstream dataset of the toy task drawn with its own seed.
Dataset sample_toy_dataset(const ToyConfig& config, int count, std::uint64_t stream);

}  // namespace harsanyi::toy

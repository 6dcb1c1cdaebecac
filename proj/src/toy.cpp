#include "harsanyi/toy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "harsanyi/error.hpp"
#include "harsanyi/manifest.hpp"
#include "harsanyi/model_io.hpp"

namespace harsanyi::toy {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

void ToyConfig::validate() const {
  if (variables < kMinToyVariables || variables > kMaxToyVariables) {
    throw UsageError("toy variable count must lie in " + std::to_string(kMinToyVariables) + ".." +
                     std::to_string(kMaxToyVariables));
  }
  if (classes < 2 || classes > 4) throw UsageError("toy downstream classes must lie in 2..4");
  if (slice_width < 1 || hidden.empty() || pretrain_samples < 1 || train_samples < 1 ||
      test_samples < 1 || batch < 1 || pretrain_epochs < 1) {
    throw UsageError("toy sizes must be positive");
  }
  if (finetune_epochs < 2) throw UsageError("toy needs at least two fine-tuning epochs");
  if (!(lr > 0.0) || momentum < 0.0 || momentum >= 1.0 || noise < 0.0 ||
      weight_decay < 0.0) {
    throw UsageError("invalid toy optimiser settings");
  }
}

ordered_json ToyConfig::to_json() const {
  return {{"variables", variables},         {"slice_width", slice_width},
          {"classes", classes},             {"seed", seed},
          {"hidden", hidden},               {"noise", noise},
          {"pretrain_samples", pretrain_samples}, {"pretrain_epochs", pretrain_epochs},
          {"train_samples", train_samples}, {"test_samples", test_samples},
          {"finetune_epochs", finetune_epochs}, {"lr", lr},
          {"momentum", momentum},           {"weight_decay", weight_decay},
          {"batch", batch},                 {"zero_baseline", zero_baseline}};
}

ToyConfig ToyConfig::from_json(const json& j) {
  ToyConfig c;
  c.variables = j.at("variables").get<int>();
  c.slice_width = j.at("slice_width").get<int>();
  c.classes = j.at("classes").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.hidden = j.at("hidden").get<std::vector<std::size_t>>();
  c.noise = j.at("noise").get<double>();
  c.pretrain_samples = j.at("pretrain_samples").get<int>();
  c.pretrain_epochs = j.at("pretrain_epochs").get<int>();
  c.train_samples = j.at("train_samples").get<int>();
  c.test_samples = j.at("test_samples").get<int>();
  c.finetune_epochs = j.at("finetune_epochs").get<int>();
  c.lr = j.at("lr").get<double>();
  c.momentum = j.at("momentum").get<double>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.batch = j.at("batch").get<int>();
  c.zero_baseline = j.at("zero_baseline").get<bool>();
  return c;
}

namespace {

// Independent, reproducible RNG streams derived from one seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum Stream : std::uint64_t {
  kPrototypes = 0,
  kPretrainData = 1,
  kPretrainTest = 2,
  kTrainData = 3,
  kTestData = 4,
  kPretrainInit = 5,
  kPretrainSgd = 6,
  kHeadInit = 7,
  kFinetuneSgd = 8,
  kScratchInit = 9,
  kScratchSgd = 10,
};

std::vector<std::vector<double>> prototypes(const ToyConfig& c) {
  std::mt19937_64 rng(stream_seed(c.seed, kPrototypes));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> out(c.variables, std::vector<double>(c.slice_width));
  for (auto& p : out) {
    double norm = 0.0;
    for (double& x : p) {
      x = normal(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : p) x *= 1.5 / norm;
  }
  return out;
}

struct Draw {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<bool>> present;
};

Draw draw(const ToyConfig& c, int count, std::uint64_t stream) {
  const auto protos = prototypes(c);
  std::mt19937_64 rng(stream_seed(c.seed, stream));
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> noise(0.0, c.noise);
  Draw d;
  for (int i = 0; i < count; ++i) {
    std::vector<double> x;
    std::vector<bool> z(c.variables);
    for (int j = 0; j < c.variables; ++j) {
      z[j] = coin(rng);
      for (int k = 0; k < c.slice_width; ++k) x.push_back((z[j] ? protos[j][k] : 0.0) + noise(rng));
    }
    d.inputs.push_back(std::move(x));
    d.present.push_back(std::move(z));
  }
  return d;
}

int concept_bit(const std::vector<bool>& z, int k) { return z[2 * k] && z[2 * k + 1] ? 1 : 0; }

int pretrain_label(const std::vector<bool>& z) {
  return concept_bit(z, 0) + 2 * concept_bit(z, 1) + 4 * concept_bit(z, 2) + 8 * concept_bit(z, 3);
}

int downstream_label(const std::vector<bool>& z, int classes) {
  const int a = concept_bit(z, 0);
  const int b = concept_bit(z, 1);
  switch (classes) {
    case 2: return a | b;
    case 3: return a + b;
    default: return a + 2 * b;
  }
}

Dataset downstream(const ToyConfig& c, int count, std::uint64_t stream) {
  Draw d = draw(c, count, stream);
  std::vector<int> labels;
  for (const auto& z : d.present) labels.push_back(downstream_label(z, c.classes));
  return Dataset::from_flat(std::vector<std::size_t>(c.variables, c.slice_width), d.inputs, labels);
}

DenseLayer random_layer(std::size_t rows, std::size_t cols, Activation act, double stddev,
                        std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, stddev);
  DenseLayer layer{rows, cols, act, std::vector<double>(rows * cols), std::vector<double>(rows, 0.0)};
  for (double& w : layer.weights) w = normal(rng);
  return layer;
}

std::string epoch_name(int epoch) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "epoch_%03d.json", epoch);
  return buf;
}

}  // namespace

PortableModel random_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                         std::size_t outputs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DenseLayer> layers;
  std::size_t width = input_dim;
  for (std::size_t h : hidden) {
    layers.push_back(random_layer(h, width, Activation::kRelu, std::sqrt(2.0 / width), rng));
    width = h;
  }
  layers.push_back(random_layer(outputs, width, Activation::kIdentity, std::sqrt(1.0 / width), rng));
  return PortableModel(input_dim, outputs, std::move(layers));
}

PortableModel random_linear_model(std::size_t input_dim, std::size_t outputs, double scale,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DenseLayer> layers;
  layers.push_back(random_layer(outputs, input_dim, Activation::kIdentity, scale, rng));
  std::normal_distribution<double> normal(0.0, scale);
  for (double& b : layers.back().bias) b = normal(rng);
  return PortableModel(input_dim, outputs, std::move(layers));
}

PortableModel train_classifier(PortableModel model, const std::vector<std::vector<double>>& inputs,
                               const std::vector<int>& labels, int epochs, const SgdConfig& sgd,
                               const std::function<void(int, const PortableModel&)>& on_epoch) {
  if (inputs.size() != labels.size() || inputs.empty()) {
    throw InvalidArgument("train_classifier: inputs and labels must be non-empty and aligned");
  }
  std::vector<DenseLayer> layers = model.layers();
  const std::size_t depth = layers.size();
  std::vector<std::vector<double>> vel_w(depth), vel_b(depth), grad_w(depth), grad_b(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    vel_w[k].assign(layers[k].weights.size(), 0.0);
    vel_b[k].assign(layers[k].bias.size(), 0.0);
    grad_w[k].resize(layers[k].weights.size());
    grad_b[k].resize(layers[k].bias.size());
  }
  std::vector<std::size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(sgd.seed);
  std::vector<std::vector<double>> acts(depth + 1);

  for (int epoch = 1; epoch <= epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += sgd.batch) {
      const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(sgd.batch));
      for (std::size_t k = 0; k < depth; ++k) {
        std::fill(grad_w[k].begin(), grad_w[k].end(), 0.0);
        std::fill(grad_b[k].begin(), grad_b[k].end(), 0.0);
      }
      for (std::size_t idx = start; idx < stop; ++idx) {
        const std::size_t i = order[idx];
        acts[0] = inputs[i];
        for (std::size_t k = 0; k < depth; ++k) acts[k + 1] = apply_layer(layers[k], acts[k]);
        std::vector<double> delta = softmax(acts[depth]);
        delta[labels[i]] -= 1.0;
        for (std::size_t k = depth; k-- > 0;) {
          const DenseLayer& layer = layers[k];
          for (std::size_t r = 0; r < layer.rows; ++r) {
            grad_b[k][r] += delta[r];
            double* gw = grad_w[k].data() + r * layer.cols;
            for (std::size_t c = 0; c < layer.cols; ++c) gw[c] += delta[r] * acts[k][c];
          }
          if (k == 0) break;
          std::vector<double> prev(layer.cols, 0.0);
          for (std::size_t r = 0; r < layer.rows; ++r) {
            const double* w = layer.weights.data() + r * layer.cols;
            for (std::size_t c = 0; c < layer.cols; ++c) prev[c] += w[c] * delta[r];
          }
          // acts[k] is the post-relu output of layer k-1.
          if (layers[k - 1].activation == Activation::kRelu) {
            for (std::size_t c = 0; c < layer.cols; ++c) {
              if (acts[k][c] <= 0.0) prev[c] = 0.0;
            }
          }
          delta = std::move(prev);
        }
      }
      const double step = sgd.lr / static_cast<double>(stop - start);
      for (std::size_t k = 0; k < depth; ++k) {
        for (std::size_t q = 0; q < grad_w[k].size(); ++q) {
          const double g = step * grad_w[k][q] + sgd.lr * sgd.weight_decay * layers[k].weights[q];
          vel_w[k][q] = sgd.momentum * vel_w[k][q] - g;
          layers[k].weights[q] += vel_w[k][q];
        }
        for (std::size_t q = 0; q < grad_b[k].size(); ++q) {
          vel_b[k][q] = sgd.momentum * vel_b[k][q] - step * grad_b[k][q];
          layers[k].bias[q] += vel_b[k][q];
        }
      }
    }
    if (on_epoch) on_epoch(epoch, PortableModel(model.input_dim(), model.output_dim(), layers));
  }
  return PortableModel(model.input_dim(), model.output_dim(), std::move(layers));
}

double accuracy(const PortableModel& model, const Dataset& data) {
  if (data.samples.empty()) return 0.0;
  std::size_t hits = 0;
  for (const Sample& s : data.samples) {
    const std::vector<double> z = model.forward(s.flatten());
    if (std::max_element(z.begin(), z.end()) - z.begin() == s.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.samples.size());
}

Dataset sample_toy_dataset(const ToyConfig& config, int count, std::uint64_t stream) {
  config.validate();
  return downstream(config, count, stream + 100);
}

ToySuite generate_toy_suite(const ToyConfig& c) {
  c.validate();
  const std::size_t input_dim = static_cast<std::size_t>(c.variables * c.slice_width);
  auto flat_inputs = [](const Dataset& d) {
    std::vector<std::vector<double>> out;
    for (const Sample& s : d.samples) out.push_back(s.flatten());
    return out;
  };
  auto labels_of = [](const Dataset& d) {
    std::vector<int> out;
    for (const Sample& s : d.samples) out.push_back(s.label);
    return out;
  };

  // Pretraining on the wide 16-class task.
  Draw pre = draw(c, c.pretrain_samples, kPretrainData);
  std::vector<int> pre_labels;
  for (const auto& z : pre.present) pre_labels.push_back(pretrain_label(z));
  PortableModel pretrain = train_classifier(
      random_mlp(input_dim, c.hidden, kPretrainClasses, stream_seed(c.seed, kPretrainInit)),
      pre.inputs, pre_labels, c.pretrain_epochs,
      {c.lr, c.momentum, c.batch, stream_seed(c.seed, kPretrainSgd), c.weight_decay});

  Draw pre_test = draw(c, c.test_samples, kPretrainTest);
  std::vector<int> pre_test_labels;
  for (const auto& z : pre_test.present) pre_test_labels.push_back(pretrain_label(z));
  const Dataset pretrain_test = Dataset::from_flat(std::vector<std::size_t>(c.variables, c.slice_width),
                                                   pre_test.inputs, pre_test_labels);

  Dataset train = downstream(c, c.train_samples, kTrainData);
  Dataset test = downstream(c, c.test_samples, kTestData);
  std::vector<bool> seen(c.classes, false);
  for (const Sample& s : train.samples) seen[s.label] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidArgument("toy training set misses a class; choose another seed or more samples");
  }
  BaselineVector baseline = compute_baseline(train.samples);
  if (c.zero_baseline) {
    for (auto& slice : baseline.variables) std::fill(slice.begin(), slice.end(), 0.0);
  }
  train.baseline = baseline;
  test.baseline = baseline;

  ToySuite suite{c, train, test, pretrain, {}, {}, {}, {}, {}, 0.0, 0.0};
  suite.pretrain_accuracy = accuracy(pretrain, pretrain_test);

  const auto train_x = flat_inputs(train);
  const auto train_y = labels_of(train);

  // Linear probe on the frozen backbone.
  std::vector<std::vector<double>> feats, test_feats;
  for (const auto& x : train_x) feats.push_back(pretrain.penultimate_features(x));
  for (const Sample& s : test.samples) test_feats.push_back(pretrain.penultimate_features(s.flatten()));
  suite.probe = train_linear_probe(feats, train_y);
  suite.probe_accuracy = probe_accuracy(suite.probe, test_feats, labels_of(test));

  // Fine-tuning: pretrained backbone with a fresh downstream head.
  std::vector<DenseLayer> layers = pretrain.layers();
  std::mt19937_64 head_rng(stream_seed(c.seed, kHeadInit));
  const std::size_t width = layers.back().cols;
  layers.back() = random_layer(c.classes, width, Activation::kIdentity, std::sqrt(1.0 / width), head_rng);
  const PortableModel finetune_init(input_dim, c.classes, std::move(layers));
  train_classifier(finetune_init, train_x, train_y, c.finetune_epochs,
                   {c.lr, c.momentum, c.batch, stream_seed(c.seed, kFinetuneSgd), c.weight_decay},
                   [&](int, const PortableModel& m) {
                     suite.finetune_checkpoints.push_back(m);
                     suite.finetune_accuracy.push_back(accuracy(m, test));
                   });

  // Same architecture and budget from a random initialisation.
  train_classifier(random_mlp(input_dim, c.hidden, c.classes, stream_seed(c.seed, kScratchInit)),
                   train_x, train_y, c.finetune_epochs,
                   {c.lr, c.momentum, c.batch, stream_seed(c.seed, kScratchSgd), c.weight_decay},
                   [&](int, const PortableModel& m) {
                     suite.random_checkpoints.push_back(m);
                     suite.random_accuracy.push_back(accuracy(m, test));
                   });
  return suite;
}

void write_toy_suite(const ToySuite& suite, const fs::path& dir, bool force) {
  if (fs::exists(dir)) {
    if (!force) throw UsageError("output directory " + dir.string() + " exists (use --force)");
    fs::remove_all(dir);
  }
  manifest::ManifestWriter out(dir, "gen-toy");
  out.set("params", suite.config.to_json());

  out.write("data/train.json", io::dataset_to_text(suite.train));
  out.write("data/test.json", io::dataset_to_text(suite.test));
  out.write("models/pretrain.json", io::model_to_text(suite.pretrain));
  out.write("models/probe.json", io::probe_to_text(suite.probe));
  out.write("models/finetune.json", io::model_to_text(suite.finetune()));
  out.write("models/random.json", io::model_to_text(suite.random()));

  ordered_json series = ordered_json::object();
  for (const auto& [name, checkpoints] :
       {std::pair{"finetune", &suite.finetune_checkpoints}, std::pair{"random", &suite.random_checkpoints}}) {
    ordered_json paths = ordered_json::array();
    for (std::size_t e = 0; e < checkpoints->size(); ++e) {
      const std::string rel = std::string("checkpoints/") + name + "/" + epoch_name(static_cast<int>(e + 1));
      out.write(rel, io::model_to_text((*checkpoints)[e]));
      paths.push_back(rel);
    }
    series[name] = paths;
  }
  out.set("data", {{"train", "data/train.json"}, {"test", "data/test.json"}});
  out.set("models", {{"pretrain", "models/pretrain.json"},
                     {"finetune", "models/finetune.json"},
                     {"random", "models/random.json"}});
  out.set("probe", "models/probe.json");
  out.set("checkpoints", series);
  out.set("metrics", {{"pretrain_accuracy", suite.pretrain_accuracy},
                      {"probe_accuracy", suite.probe_accuracy},
                      {"finetune_accuracy", suite.finetune_accuracy},
                      {"random_accuracy", suite.random_accuracy}});
  out.finish();
}

ToySuite read_toy_suite(const fs::path& dir) {
  const json doc = manifest::load(dir);
  if (doc.value("command", "") != "gen-toy") throw FormatError(dir.string() + " is not a toy suite");
  auto text = [&](const std::string& rel) { return manifest::read_verified(dir / rel); };
  try {
    ToySuite suite{ToyConfig::from_json(doc.at("params")),
                   io::dataset_from_text(text(doc.at("data").at("train"))),
                   io::dataset_from_text(text(doc.at("data").at("test"))),
                   io::model_from_text(text(doc.at("models").at("pretrain"))),
                   io::probe_from_text(text(doc.at("probe"))),
                   {}, {}, {}, {}, 0.0, 0.0};
    for (const auto& rel : doc.at("checkpoints").at("finetune")) {
      suite.finetune_checkpoints.push_back(io::model_from_text(text(rel)));
    }
    for (const auto& rel : doc.at("checkpoints").at("random")) {
      suite.random_checkpoints.push_back(io::model_from_text(text(rel)));
    }
    const json& metrics = doc.at("metrics");
    suite.pretrain_accuracy = metrics.at("pretrain_accuracy").get<double>();
    suite.probe_accuracy = metrics.at("probe_accuracy").get<double>();
    suite.finetune_accuracy = metrics.at("finetune_accuracy").get<std::vector<double>>();
    suite.random_accuracy = metrics.at("random_accuracy").get<std::vector<double>>();
    if (suite.finetune_checkpoints.size() < 2 || suite.random_checkpoints.size() < 2) {
      throw FormatError("toy suite needs at least two checkpoints per series");
    }
    return suite;
  } catch (const json::exception& e) {
    throw FormatError("malformed toy manifest: " + std::string(e.what()));
  }
}

}  // namespace harsanyi::toy

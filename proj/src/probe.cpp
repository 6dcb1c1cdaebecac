#include "harsanyi/probe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "harsanyi/error.hpp"
#include "harsanyi/model.hpp"
#include "harsanyi/scoring.hpp"

namespace harsanyi {

std::vector<double> ProbeClassifier::logits(std::span<const double> features) const {
  if (features.size() != feature_dim) {
    throw InvalidArgument("probe expects " + std::to_string(feature_dim) + " features, got " +
                          std::to_string(features.size()));
  }
  std::vector<double> z(bias);
  for (int c = 0; c < classes; ++c) {
    const double* w = weights.data() + static_cast<std::size_t>(c) * feature_dim;
    for (std::size_t k = 0; k < feature_dim; ++k) z[c] += w[k] * features[k];
  }
  return z;
}

void ProbeClassifier::validate() const {
  if (classes < 2) throw InvalidArgument("probe needs at least two classes");
  if (weights.size() != static_cast<std::size_t>(classes) * feature_dim ||
      bias.size() != static_cast<std::size_t>(classes)) {
    throw InvalidArgument("probe parameter shapes do not match classes x feature_dim");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(weights.begin(), weights.end(), finite) ||
      !std::all_of(bias.begin(), bias.end(), finite)) {
    throw InvalidArgument("probe has non-finite parameters");
  }
}

ProbeClassifier train_linear_probe(std::span<const std::vector<double>> features,
                                   std::span<const int> labels, const ProbeConfig& config,
                                   std::vector<double>* loss_trace) {
  if (features.empty() || features.size() != labels.size()) {
    throw InvalidArgument("probe training needs matching, non-empty features and labels");
  }
  if (!(config.lr > 0.0) || config.epochs < 0 || config.l2 < 0.0) {
    throw InvalidArgument("invalid probe config");
  }
  const std::size_t dim = features.front().size();
  const std::size_t count = features.size();
  int classes = 0;
  for (int y : labels) {
    if (y < 0) throw InvalidArgument("negative label");
    classes = std::max(classes, y + 1);
  }
  std::vector<std::size_t> per_class(classes, 0);
  for (int y : labels) ++per_class[y];
  if (classes < 2) throw InvalidArgument("probe training needs at least two classes");
  for (int c = 0; c < classes; ++c) {
    if (per_class[c] == 0) throw InvalidArgument("class " + std::to_string(c) + " has no samples");
  }

  // Standardize.
  std::vector<double> mean(dim, 0.0), scale(dim, 0.0);
  for (const auto& f : features) {
    if (f.size() != dim) throw InvalidArgument("ragged feature vectors");
    for (std::size_t k = 0; k < dim; ++k) mean[k] += f[k];
  }
  for (double& m : mean) m /= static_cast<double>(count);
  for (const auto& f : features) {
    for (std::size_t k = 0; k < dim; ++k) scale[k] += (f[k] - mean[k]) * (f[k] - mean[k]);
  }
  for (double& s : scale) {
    s = std::sqrt(s / static_cast<double>(count));
    if (s < 1e-12) s = 1.0;
  }
  std::vector<std::vector<double>> z(count, std::vector<double>(dim));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < dim; ++k) z[i][k] = (features[i][k] - mean[k]) / scale[k];
  }

  ProbeClassifier probe{classes, dim, std::vector<double>(classes * dim), std::vector<double>(classes, 0.0)};
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> init(0.0, 0.01);
  for (double& w : probe.weights) w = init(rng);

  std::vector<double> grad_w(probe.weights.size());
  std::vector<double> grad_b(classes);
  auto step = [&](bool update) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const std::vector<double> p = softmax(probe.logits(z[i]));
      loss -= std::log(std::max(p[labels[i]], 1e-300));
      for (int c = 0; c < classes; ++c) {
        const double g = p[c] - (c == labels[i] ? 1.0 : 0.0);
        grad_b[c] += g;
        double* gw = grad_w.data() + static_cast<std::size_t>(c) * dim;
        for (std::size_t k = 0; k < dim; ++k) gw[k] += g * z[i][k];
      }
    }
    const double inv = 1.0 / static_cast<double>(count);
    double penalty = 0.0;
    for (double w : probe.weights) penalty += w * w;
    loss = loss * inv + 0.5 * config.l2 * penalty;
    if (loss_trace) loss_trace->push_back(loss);
    if (!update) return;
    for (std::size_t k = 0; k < probe.weights.size(); ++k) {
      probe.weights[k] -= config.lr * (grad_w[k] * inv + config.l2 * probe.weights[k]);
    }
    for (int c = 0; c < classes; ++c) probe.bias[c] -= config.lr * grad_b[c] * inv;
  };
  for (int epoch = 0; epoch < config.epochs; ++epoch) step(true);
  if (loss_trace) step(false);

  // Fold the standardization back: W' = W / s, b' = b - W' mean.
  for (int c = 0; c < classes; ++c) {
    double* w = probe.weights.data() + static_cast<std::size_t>(c) * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      w[k] /= scale[k];
      probe.bias[c] -= w[k] * mean[k];
    }
  }
  probe.validate();
  return probe;
}

double probe_logodds(const ProbeClassifier& probe, std::span<const double> features, int y_truth) {
  if (y_truth < 0 || y_truth >= probe.classes) throw InvalidArgument("label outside probe classes");
  return logodds_from_probabilities(softmax(probe.logits(features)), y_truth);
}

double probe_accuracy(const ProbeClassifier& probe, std::span<const std::vector<double>> features,
                      std::span<const int> labels) {
  if (features.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const std::vector<double> z = probe.logits(features[i]);
    const auto best = std::max_element(z.begin(), z.end()) - z.begin();
    if (best == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(features.size());
}

}  // namespace harsanyi

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace harsanyi {

/// Linear classifier W f(x) + b over frozen penultimate features.
struct ProbeClassifier {
  int classes = 0;
  std::size_t feature_dim = 0;
  std::vector<double> weights;  // classes x feature_dim, row-major
  std::vector<double> bias;     // classes

  std::vector<double> logits(std::span<const double> features) const;

  /// Throws unless shapes agree and every parameter is finite.
  void validate() const;

  friend bool operator==(const ProbeClassifier&, const ProbeClassifier&) = default;
};

struct ProbeConfig {
  double lr = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

/// Multinomial logistic regression by full-batch gradient descent.
///
/// Features are standardized per dimension for the optimisation and the
/// scaling is folded back into the returned weights, so the probe applies to
/// raw features. Loss is the mean cross-entropy plus (l2/2)|W|^2 in the
/// standardized space; `loss_trace`, when given, receives it once per epoch
/// (before each update) plus once after the last update.
///
/// Labels must cover every class 0..max(label) and at least two classes.
/// Single-threaded and deterministic for a given (features, labels, config).
ProbeClassifier train_linear_probe(std::span<const std::vector<double>> features,
                                   std::span<const int> labels, const ProbeConfig& config = {},
                                   std::vector<double>* loss_trace = nullptr);

/// log-odds of the probe's softmax probability for y_truth.
double probe_logodds(const ProbeClassifier& probe, std::span<const double> features, int y_truth);

/// Fraction of samples whose argmax prediction equals the label.
double probe_accuracy(const ProbeClassifier& probe, std::span<const std::vector<double>> features,
                      std::span<const int> labels);

}  // namespace harsanyi

#pragma once

#include <span>
#include <vector>

#include "harsanyi/dataset.hpp"
#include "harsanyi/lattice.hpp"
#include "harsanyi/model.hpp"
#include "harsanyi/probe.hpp"

namespace harsanyi {

/// Probabilities are clamped to [eps, 1 - eps] before the log-odds transform.
inline constexpr double kProbabilityClamp = 1e-12;

/// log(p / (1 - p)) after clamping p.
double confidence_logodds(double p_truth);

/// Log-odds of class y from a full probability vector. 1 - p_y is taken as
/// the sum of the other probabilities, which avoids cancellation when p_y is
/// close to one; both terms go through the same clamp.
double logodds_from_probabilities(std::span<const double> probs, int y);

/// Softmax of the model's logits on x_T.
std::vector<double> evaluate_masked(const PortableModel& model, const Sample& sample,
                                    const BaselineVector& baseline, SubsetMask t);

/// Which head turns a masked input into a scalar v(x_T).
class Scorer {
 public:
  /// The model's own classifier (confidence log-odds on its logits).
  static Scorer model_head() { return Scorer(nullptr); }
  /// A linear probe applied to the model's penultimate features.
  static Scorer probe_head(const ProbeClassifier& probe) { return Scorer(&probe); }

  bool uses_probe() const { return probe_ != nullptr; }
  const ProbeClassifier* probe() const { return probe_; }

  /// v(x) for one already-masked input.
  double score(const PortableModel& model, std::span<const double> input, int y_truth) const;

 private:
  explicit Scorer(const ProbeClassifier* probe) : probe_(probe) {}
  const ProbeClassifier* probe_;
};

/// Scores all 2^n masked variants of the sample, in mask order.
MaskedOutputTable build_masked_table(const PortableModel& model, const Sample& sample,
                                     const BaselineVector& baseline, const Scorer& scorer);

}  // namespace harsanyi

#include "harsanyi/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "harsanyi/error.hpp"

namespace harsanyi {

double confidence_logodds(double p_truth) {
  const double p = std::clamp(p_truth, kProbabilityClamp, 1.0 - kProbabilityClamp);
  const double q = std::clamp(1.0 - p_truth, kProbabilityClamp, 1.0 - kProbabilityClamp);
  return std::log(p) - std::log(q);
}

double logodds_from_probabilities(std::span<const double> probs, int y) {
  if (y < 0 || static_cast<std::size_t>(y) >= probs.size()) {
    throw InvalidArgument("ground-truth class " + std::to_string(y) + " outside output range");
  }
  double rest = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (static_cast<int>(k) != y) rest += probs[k];
  }
  const double p = std::clamp(probs[y], kProbabilityClamp, 1.0 - kProbabilityClamp);
  rest = std::clamp(rest, kProbabilityClamp, 1.0 - kProbabilityClamp);
  return std::log(p) - std::log(rest);
}

std::vector<double> evaluate_masked(const PortableModel& model, const Sample& sample,
                                    const BaselineVector& baseline, SubsetMask t) {
  return softmax(model.forward(mask_input(sample, baseline, t)));
}

double Scorer::score(const PortableModel& model, std::span<const double> input, int y_truth) const {
  if (probe_) return probe_logodds(*probe_, model.penultimate_features(input), y_truth);
  return logodds_from_probabilities(softmax(model.forward(input)), y_truth);
}

MaskedOutputTable build_masked_table(const PortableModel& model, const Sample& sample,
                                     const BaselineVector& baseline, const Scorer& scorer) {
  const int n = sample.variable_count();
  check_variable_count(n);
  check_same_shape(sample, baseline);
  if (scorer.uses_probe()) {
    scorer.probe()->validate();
    if (scorer.probe()->feature_dim != model.feature_dim()) {
      throw InvalidArgument("probe feature_dim does not match the model's penultimate width");
    }
  }
  std::vector<double> values(lattice_size(n));
  for (std::size_t m = 0; m < values.size(); ++m) {
    const SubsetMask t(static_cast<std::uint32_t>(m), n);
    values[m] = scorer.score(model, mask_input(sample, baseline, t), sample.label);
  }
  return MaskedOutputTable(n, std::move(values));
}

}  // namespace harsanyi

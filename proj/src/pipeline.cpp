#include "harsanyi/pipeline.hpp"

#include <optional>

#include "harsanyi/error.hpp"
#include "harsanyi/parallel.hpp"

namespace harsanyi {

std::vector<InteractionVector> interactions_for(const PortableModel& model, const Scorer& scorer,
                                                std::span<const Sample> samples,
                                                const BaselineVector& baseline, int jobs) {
  std::vector<std::optional<InteractionVector>> slots(samples.size());
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    slots[i] = mobius_transform(build_masked_table(model, samples[i], baseline, scorer));
  });
  std::vector<InteractionVector> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

ToyAnalysis analyze_toy_suite(const toy::ToySuite& suite, const AnalysisOptions& options) {
  if (options.samples < 1 || static_cast<std::size_t>(options.samples) > suite.test.samples.size()) {
    throw InvalidArgument("analysis sample count must lie in 1..held-out size");
  }
  const std::span<const Sample> samples(suite.test.samples.data(), options.samples);
  const BaselineVector baseline = suite.test.effective_baseline();
  const Scorer head = Scorer::model_head();

  ToyAnalysis a;
  a.pretrain = interactions_for(suite.pretrain, Scorer::probe_head(suite.probe), samples, baseline,
                                options.jobs);
  for (const PortableModel& m : suite.finetune_checkpoints) {
    a.finetune_epochs.push_back(interactions_for(m, head, samples, baseline, options.jobs));
  }
  for (const PortableModel& m : suite.random_checkpoints) {
    a.random_epochs.push_back(interactions_for(m, head, samples, baseline, options.jobs));
  }
  a.finetune = a.finetune_epochs.back();
  a.random = a.random_epochs.back();

  for (std::size_t s = 0; s < samples.size(); ++s) {
    a.decompositions.push_back(decompose(a.pretrain[s], a.finetune[s]));
    a.ratios.push_back(learnability_ratio(a.pretrain[s], a.finetune[s], a.random[s]));
    a.finetune_sparsity.push_back(sparsity_report(a.finetune[s], options.tau_ratio));
  }
  a.orders = order_decomposition(a.decompositions);
  a.ratio_summary = summarize_ratios(a.ratios);
  const TrajectoryOptions traj{options.salient_only, options.tau_ratio};
  a.finetune_trajectory = trajectory(a.finetune_epochs, TrajectoryVariant::kFinetune, traj);
  a.random_trajectory = trajectory(a.random_epochs, TrajectoryVariant::kRandom, traj);
  return a;
}

}  // namespace harsanyi

#pragma once

#include <span>
#include <vector>

#include "harsanyi/lattice.hpp"
#include "harsanyi/metrics.hpp"
#include "harsanyi/scoring.hpp"
#include "harsanyi/toy.hpp"

namespace harsanyi {

/// Interaction vectors of one model/head over a list of samples, in sample order.
std::vector<InteractionVector> interactions_for(const PortableModel& model, const Scorer& scorer,
                                                std::span<const Sample> samples,
                                                const BaselineVector& baseline, int jobs = 1);

struct AnalysisOptions {
  int samples = 20;  // taken from the head of the held-out set
  double tau_ratio = kDefaultTauRatio;
  bool salient_only = false;
  int jobs = 1;
};

/// Every quantity the toy scenario is analysed with.
struct ToyAnalysis {
  std::vector<InteractionVector> pretrain;  // probe head on the pretrained backbone
  std::vector<InteractionVector> finetune;  // model head
  std::vector<InteractionVector> random;    // model head
  std::vector<std::vector<InteractionVector>> finetune_epochs;  // [epoch][sample]
  std::vector<std::vector<InteractionVector>> random_epochs;
  std::vector<KnowledgeDecomposition> decompositions;
  OrderDecomposition orders;
  std::vector<LearnabilityRatio> ratios;
  RatioSummary ratio_summary;
  std::vector<TrajectoryRecord> finetune_trajectory;
  std::vector<TrajectoryRecord> random_trajectory;
  std::vector<SparsityReport> finetune_sparsity;
};

ToyAnalysis analyze_toy_suite(const toy::ToySuite& suite, const AnalysisOptions& options);

}  // namespace harsanyi

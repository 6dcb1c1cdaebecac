#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harsanyi/lattice.hpp"

namespace harsanyi {

/// Per-subset split of interaction strength between a pretrain-side and a
/// finetune-side vector. Every array has 2^n non-negative entries with
///   preserve + discard == |I_pre| and preserve + new_ == |I_fine|.
struct KnowledgeDecomposition {
  int n = 0;
  std::vector<double> preserve;
  std::vector<double> discard;
  std::vector<double> new_;
  std::string pretrain_id;
  std::string finetune_id;
};

KnowledgeDecomposition decompose(const InteractionVector& pre, const InteractionVector& fine,
                                 std::string pretrain_id = {}, std::string finetune_id = {});

/// Means over samples and subsets of each order i = 0..n.
struct OrderDecomposition {
  int n = 0;
  std::vector<double> pretrain;
  std::vector<double> finetune;
  std::vector<double> preserve;
  std::vector<double> discard;
  std::vector<double> new_;
};

OrderDecomposition order_decomposition(std::span<const KnowledgeDecomposition> decomps);

/// Fraction of preserved knowledge a from-scratch model also encodes.
struct LearnabilityRatio {
  int n = 0;
  /// Defined only where K_preserve(S) > 0.
  std::vector<std::optional<double>> per_subset;
  /// Mean of the defined per-subset ratios; empty when none is defined.
  std::optional<double> aggregate;
  std::size_t defined_count = 0;
  std::size_t excluded_count = 0;
};

LearnabilityRatio learnability_ratio(const InteractionVector& pre, const InteractionVector& fine,
                                     const InteractionVector& rand);

/// Ratio summarised over many samples.
struct RatioSummary {
  int n = 0;
  /// E_x of each sample's aggregate, over samples whose aggregate is defined.
  std::optional<double> aggregate;
  /// Mean of defined per-subset ratios pooled by order.
  std::vector<std::optional<double>> per_order;
  std::vector<std::size_t> defined_per_order;
  std::size_t defined_count = 0;
  std::size_t excluded_count = 0;
  std::size_t samples = 0;
};

RatioSummary summarize_ratios(std::span<const LearnabilityRatio> ratios);

/// [max(I, 0), -min(I, 0)], length 2d.
struct NonNegVector {
  std::vector<double> values;
  std::size_t dimension() const { return values.size() / 2; }
};

NonNegVector split_nonneg(const InteractionVector& iv);
/// Same expansion restricted to the listed subsets (in the given order).
NonNegVector split_nonneg(const InteractionVector& iv, std::span<const SubsetMask> subsets);

/// |min(a, b)|_1 / |max(a, b)|_1. Two all-zero vectors give 1; exactly one gives 0.
double jaccard(const NonNegVector& a, const NonNegVector& b);

enum class TrajectoryVariant { kFinetune, kRandom };
std::string_view variant_name(TrajectoryVariant v);
TrajectoryVariant parse_variant(std::string_view name);

struct TrajectoryRecord {
  int epoch = 0;  // 1-based checkpoint index
  double similarity = 0.0;
  TrajectoryVariant variant = TrajectoryVariant::kFinetune;
  std::size_t samples = 0;
};

struct TrajectoryOptions {
  /// Restrict d to the subsets salient in each sample's final vector.
  bool salient_only = false;
  double tau_ratio = kDefaultTauRatio;
};

/// Jaccard of every epoch's vector against the final one for a single sample.
/// The last epoch must equal `final_iv`.
std::vector<double> jaccard_to_final(std::span<const InteractionVector> per_epoch,
                                     const InteractionVector& final_iv,
                                     const TrajectoryOptions& options = {});

/// per_epoch[e][s] is sample s after epoch e+1; the last epoch is the final
/// model. Per-sample similarities are averaged before each record is emitted.
std::vector<TrajectoryRecord> trajectory(std::span<const std::vector<InteractionVector>> per_epoch,
                                         TrajectoryVariant variant,
                                         const TrajectoryOptions& options = {});

}  // namespace harsanyi

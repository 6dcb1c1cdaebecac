#include "harsanyi/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "harsanyi/error.hpp"

namespace harsanyi {
namespace {

// Remainder r with total - part rounded so that part + r == total holds in
// floating point, not just in exact arithmetic.
double exact_remainder(double total, double part) {
  double r = total - part;
  for (int step = 0; step < 4 && part + r != total; ++step) {
    r = std::nextafter(r, part + r < total ? INFINITY : -INFINITY);
  }
  return r;
}

}  // namespace

KnowledgeDecomposition decompose(const InteractionVector& pre, const InteractionVector& fine,
                                 std::string pretrain_id, std::string finetune_id) {
  if (pre.n() != fine.n()) throw InvalidArgument("decompose: vectors disagree on n");
  const std::size_t size = pre.size();
  KnowledgeDecomposition d{pre.n(),
                           std::vector<double>(size),
                           std::vector<double>(size),
                           std::vector<double>(size),
                           std::move(pretrain_id),
                           std::move(finetune_id)};
  for (std::size_t m = 0; m < size; ++m) {
    const double a = std::abs(pre[m]);
    const double b = std::abs(fine[m]);
    const bool same_effect = pre[m] * fine[m] > 0.0;
    d.preserve[m] = same_effect ? std::min(a, b) : 0.0;
    d.discard[m] = exact_remainder(a, d.preserve[m]);
    d.new_[m] = exact_remainder(b, d.preserve[m]);
  }
  return d;
}

OrderDecomposition order_decomposition(std::span<const KnowledgeDecomposition> decomps) {
  if (decomps.empty()) throw InvalidArgument("order_decomposition needs at least one input");
  const int n = decomps.front().n;
  OrderDecomposition out{n,
                         std::vector<double>(n + 1, 0.0),
                         std::vector<double>(n + 1, 0.0),
                         std::vector<double>(n + 1, 0.0),
                         std::vector<double>(n + 1, 0.0),
                         std::vector<double>(n + 1, 0.0)};
  for (const KnowledgeDecomposition& d : decomps) {
    if (d.n != n) throw InvalidArgument("order_decomposition: mixed variable counts");
    for (std::size_t m = 0; m < d.preserve.size(); ++m) {
      const int i = std::popcount(m);
      out.preserve[i] += d.preserve[m];
      out.discard[i] += d.discard[m];
      out.new_[i] += d.new_[m];
      out.pretrain[i] += d.preserve[m] + d.discard[m];
      out.finetune[i] += d.preserve[m] + d.new_[m];
    }
  }
  const double samples = static_cast<double>(decomps.size());
  for (int i = 0; i <= n; ++i) {
    const double denom = samples * binomial(n, i);
    for (auto* v : {&out.pretrain, &out.finetune, &out.preserve, &out.discard, &out.new_}) {
      (*v)[i] /= denom;
    }
  }
  return out;
}

LearnabilityRatio learnability_ratio(const InteractionVector& pre, const InteractionVector& fine,
                                     const InteractionVector& rand) {
  if (pre.n() != fine.n() || pre.n() != rand.n()) {
    throw InvalidArgument("learnability_ratio: vectors disagree on n");
  }
  const KnowledgeDecomposition d = decompose(pre, fine);
  LearnabilityRatio out;
  out.n = pre.n();
  out.per_subset.resize(pre.size());
  double total = 0.0;
  for (std::size_t m = 0; m < pre.size(); ++m) {
    const double kept = d.preserve[m];
    if (!(kept > 0.0)) {
      ++out.excluded_count;
      continue;
    }
    const bool learned = pre[m] * rand[m] > 0.0;
    const double r = learned ? std::min(std::abs(rand[m]), kept) / kept : 0.0;
    out.per_subset[m] = r;
    total += r;
    ++out.defined_count;
  }
  if (out.defined_count > 0) out.aggregate = total / static_cast<double>(out.defined_count);
  return out;
}

RatioSummary summarize_ratios(std::span<const LearnabilityRatio> ratios) {
  if (ratios.empty()) throw InvalidArgument("summarize_ratios needs at least one input");
  const int n = ratios.front().n;
  RatioSummary out;
  out.n = n;
  out.samples = ratios.size();
  out.per_order.assign(n + 1, std::nullopt);
  out.defined_per_order.assign(n + 1, 0);
  std::vector<double> order_sums(n + 1, 0.0);
  double aggregate_sum = 0.0;
  std::size_t aggregate_count = 0;
  for (const LearnabilityRatio& r : ratios) {
    if (r.n != n) throw InvalidArgument("summarize_ratios: mixed variable counts");
    out.defined_count += r.defined_count;
    out.excluded_count += r.excluded_count;
    if (r.aggregate) {
      aggregate_sum += *r.aggregate;
      ++aggregate_count;
    }
    for (std::size_t m = 0; m < r.per_subset.size(); ++m) {
      if (!r.per_subset[m]) continue;
      order_sums[std::popcount(m)] += *r.per_subset[m];
      ++out.defined_per_order[std::popcount(m)];
    }
  }
  if (aggregate_count > 0) out.aggregate = aggregate_sum / static_cast<double>(aggregate_count);
  for (int i = 0; i <= n; ++i) {
    if (out.defined_per_order[i] > 0) {
      out.per_order[i] = order_sums[i] / static_cast<double>(out.defined_per_order[i]);
    }
  }
  return out;
}

NonNegVector split_nonneg(const InteractionVector& iv) {
  const std::size_t d = iv.size();
  NonNegVector out{std::vector<double>(2 * d, 0.0)};
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = std::max(iv[k], 0.0);
    out.values[k + d] = -std::min(iv[k], 0.0);
  }
  return out;
}

NonNegVector split_nonneg(const InteractionVector& iv, std::span<const SubsetMask> subsets) {
  const std::size_t d = subsets.size();
  NonNegVector out{std::vector<double>(2 * d, 0.0)};
  for (std::size_t k = 0; k < d; ++k) {
    const double x = iv.at(subsets[k]);
    out.values[k] = std::max(x, 0.0);
    out.values[k + d] = -std::min(x, 0.0);
  }
  return out;
}

double jaccard(const NonNegVector& a, const NonNegVector& b) {
  if (a.values.size() != b.values.size()) throw InvalidArgument("jaccard: length mismatch");
  double lo = 0.0, hi = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    if (a.values[k] < 0.0 || b.values[k] < 0.0) {
      throw InvalidArgument("jaccard: negative entry in a non-negative vector");
    }
    lo += std::min(a.values[k], b.values[k]);
    hi += std::max(a.values[k], b.values[k]);
  }
  if (hi == 0.0) return 1.0;
  return lo / hi;
}

std::string_view variant_name(TrajectoryVariant v) {
  return v == TrajectoryVariant::kFinetune ? "finetune" : "random";
}

TrajectoryVariant parse_variant(std::string_view name) {
  if (name == "finetune") return TrajectoryVariant::kFinetune;
  if (name == "random") return TrajectoryVariant::kRandom;
  throw InvalidArgument("unknown trajectory variant '" + std::string(name) + "'");
}

std::vector<double> jaccard_to_final(std::span<const InteractionVector> per_epoch,
                                     const InteractionVector& final_iv,
                                     const TrajectoryOptions& options) {
  if (per_epoch.empty()) throw InvalidArgument("trajectory needs at least one epoch");
  if (!(per_epoch.back() == final_iv)) {
    throw InvalidArgument("the last epoch's vector must be the final vector");
  }
  std::vector<SubsetMask> support;
  if (options.salient_only) support = select_salient(final_iv, options.tau_ratio).members;
  auto expand = [&](const InteractionVector& iv) {
    if (iv.n() != final_iv.n()) throw InvalidArgument("trajectory: mixed variable counts");
    return options.salient_only ? split_nonneg(iv, support) : split_nonneg(iv);
  };
  const NonNegVector target = expand(final_iv);
  std::vector<double> out;
  out.reserve(per_epoch.size());
  for (const InteractionVector& iv : per_epoch) out.push_back(jaccard(expand(iv), target));
  return out;
}

std::vector<TrajectoryRecord> trajectory(std::span<const std::vector<InteractionVector>> per_epoch,
                                         TrajectoryVariant variant,
                                         const TrajectoryOptions& options) {
  if (per_epoch.empty()) throw InvalidArgument("trajectory needs at least one epoch");
  const std::size_t samples = per_epoch.back().size();
  if (samples == 0) throw InvalidArgument("trajectory needs at least one sample");
  for (const auto& epoch : per_epoch) {
    if (epoch.size() != samples) throw InvalidArgument("trajectory: epochs differ in sample count");
  }
  std::vector<double> sums(per_epoch.size(), 0.0);
  std::vector<InteractionVector> series;
  for (std::size_t s = 0; s < samples; ++s) {
    series.clear();
    for (const auto& epoch : per_epoch) series.push_back(epoch[s]);
    const std::vector<double> sims = jaccard_to_final(series, series.back(), options);
    for (std::size_t e = 0; e < sims.size(); ++e) sums[e] += sims[e];
  }
  std::vector<TrajectoryRecord> out;
  for (std::size_t e = 0; e < per_epoch.size(); ++e) {
    out.push_back({static_cast<int>(e + 1), sums[e] / static_cast<double>(samples), variant, samples});
  }
  return out;
}

}  // namespace harsanyi

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harsanyi/lattice.hpp"
#include "harsanyi/metrics.hpp"

namespace harsanyi::report {

enum class Format { kCsv, kJsonl };
Format parse_format(std::string_view name);
std::string_view extension(Format f);

/// Shortest representation that round-trips a double.
std::string format_real(double x);

/// Rows: order, pretrain, finetune, preserve, discard, new [, ratio, ratio_defined].
std::string order_decomposition_report(const OrderDecomposition& od, const RatioSummary* ratio,
                                       Format format);

/// Aggregate Ratio with its defined and excluded subset counts.
std::string ratio_summary_report(const RatioSummary& ratio, Format format);

/// One row per (sample, mask) with the raw dividends and the decomposition.
struct SubsetDumpRow {
  std::string sample;
  const InteractionVector* pre;
  const InteractionVector* fine;
  const InteractionVector* rand;  // may be null
  const KnowledgeDecomposition* decomposition;
  const LearnabilityRatio* ratio;  // may be null
};
std::string subset_dump(std::span<const SubsetDumpRow> rows, Format format);

struct NamedSparsity {
  std::string sample;
  SparsityReport report;
};
/// Rows: sample, salient_count, total_count, tau, residual_max, output_max.
std::string sparsity_table(std::span<const NamedSparsity> rows, Format format);

/// Rows: variant, epoch, jaccard, samples_n.
std::string trajectory_report(std::span<const TrajectoryRecord> records, Format format);

/// Line chart of jaccard against epoch, one polyline per variant present.
std::string trajectory_svg(std::span<const TrajectoryRecord> records);

}  // namespace harsanyi::report

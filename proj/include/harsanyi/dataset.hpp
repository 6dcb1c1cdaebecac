#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "harsanyi/subset.hpp"

namespace harsanyi {

/// One input x = [x_1 ... x_n]. Each variable is a contiguous slice of the
/// model input; concatenating the slices in order gives the full input.
struct Sample {
  std::vector<std::vector<double>> variables;
  int label = 0;

  int variable_count() const { return static_cast<int>(variables.size()); }
  std::vector<double> flatten() const;
};

/// Per-variable replacement values used for masked-out variables.
struct BaselineVector {
  std::vector<std::vector<double>> variables;
};

/// x_T: variables in T kept, the rest replaced by their baseline slices.
std::vector<double> mask_input(const Sample& sample, const BaselineVector& baseline, SubsetMask t);

/// Elementwise mean of every variable slice over the samples.
BaselineVector compute_baseline(std::span<const Sample> samples);

/// Throws unless the baseline slices have the sample's shapes.
void check_same_shape(const Sample& sample, const BaselineVector& baseline);

/// Samples sharing one slice layout, plus an optional baseline override.
struct Dataset {
  std::vector<std::size_t> slice_sizes;
  std::vector<Sample> samples;
  std::optional<BaselineVector> baseline;

  std::size_t input_dim() const;
  int variable_count() const { return static_cast<int>(slice_sizes.size()); }

  /// The override when present, otherwise the mean over all samples.
  BaselineVector effective_baseline() const;

  /// Splits flat inputs into slices. Throws if boundaries do not tile the width.
  static Dataset from_flat(std::vector<std::size_t> slice_sizes,
                           std::span<const std::vector<double>> inputs,
                           std::span<const int> labels);
};

}  // namespace harsanyi

#include "harsanyi/dataset.hpp"

#include <numeric>
#include <string>

#include "harsanyi/error.hpp"

namespace harsanyi {

std::vector<double> Sample::flatten() const {
  std::vector<double> out;
  for (const auto& v : variables) out.insert(out.end(), v.begin(), v.end());
  return out;
}

void check_same_shape(const Sample& sample, const BaselineVector& baseline) {
  if (sample.variables.size() != baseline.variables.size()) {
    throw InvalidArgument("baseline has " + std::to_string(baseline.variables.size()) +
                          " variables, sample has " + std::to_string(sample.variables.size()));
  }
  for (std::size_t j = 0; j < sample.variables.size(); ++j) {
    if (sample.variables[j].size() != baseline.variables[j].size()) {
      throw InvalidArgument("baseline slice " + std::to_string(j) + " has the wrong width");
    }
  }
}

std::vector<double> mask_input(const Sample& sample, const BaselineVector& baseline, SubsetMask t) {
  check_same_shape(sample, baseline);
  if (t.n() != sample.variable_count()) {
    throw InvalidArgument("mask n=" + std::to_string(t.n()) + " but sample has " +
                          std::to_string(sample.variable_count()) + " variables");
  }
  std::vector<double> out;
  for (int j = 0; j < sample.variable_count(); ++j) {
    const auto& src = t.contains(j) ? sample.variables[j] : baseline.variables[j];
    out.insert(out.end(), src.begin(), src.end());
  }
  return out;
}

BaselineVector compute_baseline(std::span<const Sample> samples) {
  if (samples.empty()) throw InvalidArgument("compute_baseline needs at least one sample");
  BaselineVector mean;
  mean.variables = samples.front().variables;
  for (auto& v : mean.variables) std::fill(v.begin(), v.end(), 0.0);
  for (const Sample& s : samples) {
    check_same_shape(s, mean);
    for (std::size_t j = 0; j < s.variables.size(); ++j) {
      for (std::size_t k = 0; k < s.variables[j].size(); ++k) {
        mean.variables[j][k] += s.variables[j][k];
      }
    }
  }
  const double count = static_cast<double>(samples.size());
  for (auto& v : mean.variables) {
    for (double& x : v) x /= count;
  }
  return mean;
}

std::size_t Dataset::input_dim() const {
  return std::accumulate(slice_sizes.begin(), slice_sizes.end(), std::size_t{0});
}

BaselineVector Dataset::effective_baseline() const {
  if (baseline) return *baseline;
  return compute_baseline(samples);
}

Dataset Dataset::from_flat(std::vector<std::size_t> slice_sizes,
                           std::span<const std::vector<double>> inputs,
                           std::span<const int> labels) {
  if (inputs.size() != labels.size()) throw InvalidArgument("inputs and labels differ in length");
  Dataset ds;
  ds.slice_sizes = std::move(slice_sizes);
  const std::size_t width = ds.input_dim();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].size() != width) {
      throw InvalidArgument("sample " + std::to_string(i) + " width does not match slice layout");
    }
    Sample s;
    s.label = labels[i];
    std::size_t offset = 0;
    for (std::size_t size : ds.slice_sizes) {
      s.variables.emplace_back(inputs[i].begin() + static_cast<std::ptrdiff_t>(offset),
                               inputs[i].begin() + static_cast<std::ptrdiff_t>(offset + size));
      offset += size;
    }
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

}  // namespace harsanyi

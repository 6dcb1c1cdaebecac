#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "harsanyi/dataset.hpp"
#include "harsanyi/model.hpp"
#include "harsanyi/probe.hpp"

namespace harsanyi::io {

// All three containers are JSON documents. Real-valued arrays accept JSON
// numbers or strings holding a decimal or C99 hex-float literal
// ("0x1.8p+1"); writers emit shortest round-trip decimals.

/// Keys exactly: version, input_dim, output_dim, layers[{rows, cols,
/// activation, weights, bias}]. Unknown keys are rejected.
std::string model_to_text(const PortableModel& model);
PortableModel model_from_text(std::string_view text);

/// Keys: version, classes, feature_dim, W (row-major), b.
std::string probe_to_text(const ProbeClassifier& probe);
ProbeClassifier probe_from_text(std::string_view text);

/// Keys: version, boundaries (n+1 offsets starting at 0), samples[{label, x}],
/// optional baseline (flat, input width).
std::string dataset_to_text(const Dataset& dataset);
Dataset dataset_from_text(std::string_view text);

PortableModel read_model(const std::filesystem::path& path);
ProbeClassifier read_probe(const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

}  // namespace harsanyi::io

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "harsanyi/lattice.hpp"

namespace harsanyi {

inline constexpr int kVerifyMaxVariables = 12;

struct VerifyOptions {
  int n_max = kVerifyMaxVariables;
  int trials = 20;  // random inputs per n and per check
  std::uint64_t seed = 0;
  /// Transform under test; mobius_transform when empty. Tests swap in a
  /// corrupted transform to make sure failures are reported.
  std::function<InteractionVector(const MaskedOutputTable&)> transform;
};

struct VerifyCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  bool passed = true;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
  std::string to_text() const;
};

/// Round-trip, brute-force equivalence, linearity, additive null,
/// conservation, ratio bounds and Jaccard identities on random inputs.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace harsanyi

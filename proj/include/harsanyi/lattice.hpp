#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "harsanyi/subset.hpp"

namespace harsanyi {

/// Dense array of 2^n finite reals indexed by subset bitmask.
///
/// The two instantiations below share layout and validation but are kept as
/// distinct types so a table of masked outputs cannot be passed where a
/// vector of dividends is expected.
template <class Tag>
class LatticeArray {
 public:
  /// Validates 1 <= n <= 24, values.size() == 2^n and finiteness.
  LatticeArray(int n, std::vector<double> values);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t mask) const { return values_[mask]; }
  double at(SubsetMask s) const;

  friend bool operator==(const LatticeArray&, const LatticeArray&) = default;

 private:
  int n_;
  std::vector<double> values_;
};

struct MaskedOutputTag;
struct InteractionTag;

/// v(x_T) for every mask T, in log-odds units.
using MaskedOutputTable = LatticeArray<MaskedOutputTag>;
/// Harsanyi dividends I(S|x) for every subset S.
using InteractionVector = LatticeArray<InteractionTag>;

extern template class LatticeArray<MaskedOutputTag>;
extern template class LatticeArray<InteractionTag>;

/// Default salient threshold as a fraction of the largest |I(S|x)|.
inline constexpr double kDefaultTauRatio = 0.05;

/// Subsets whose dividend magnitude strictly exceeds tau.
struct SalientSet {
  int n = 0;
  double tau = 0.0;
  double tau_ratio = kDefaultTauRatio;
  std::vector<SubsetMask> members;  // ascending mask order

  bool contains(SubsetMask s) const;
};

/// Mean |I(S|x)| per interaction order |S| = 0..n.
struct OrderProfile {
  int n = 0;
  std::vector<double> per_order;
};

struct SparsityReport {
  std::size_t salient_count = 0;
  std::size_t total_count = 0;
  /// max_T |sum_{S subset T} I - sum_{S subset T, S salient} I|
  double residual_max = 0.0;
  double tau_ratio = kDefaultTauRatio;
  double tau = 0.0;
  /// max_T |v(x_T)|, the scale the residual is judged against.
  double output_max = 0.0;
};

/// Harsanyi dividends by the in-place subset-lattice Moebius transform, O(n 2^n).
InteractionVector mobius_transform(const MaskedOutputTable& table);

/// Literal inclusion-exclusion over every T subset S, O(3^n). Oracle only; n <= 16.
InteractionVector mobius_brute(const MaskedOutputTable& table);
inline constexpr int kBruteForceMaxVariables = 16;

/// Inverse transform: v(x_T) = sum_{S subset T} I(S|x).
MaskedOutputTable zeta_transform(const InteractionVector& iv);

/// tau = tau_ratio * max_S |I(S|x)|; requires 0 < tau_ratio < 1.
SalientSet select_salient(const InteractionVector& iv, double tau_ratio = kDefaultTauRatio);

/// sum_{S subset T, S salient} I(S|x).
double reconstruct_salient(const SalientSet& salient, const InteractionVector& iv, SubsetMask t);

SparsityReport sparsity_report(const InteractionVector& iv, double tau_ratio = kDefaultTauRatio);

/// Requires a non-empty list with a common n.
OrderProfile order_strength(std::span<const InteractionVector> ivs);

/// C(n, k) as a double; exact for n <= 24.
double binomial(int n, int k);

// Tolerance policy: relative 1e-9 with an absolute floor of 1e-12.
inline constexpr double kRelativeTolerance = 1e-9;
inline constexpr double kAbsoluteFloor = 1e-12;

/// max_k |a_k - b_k| / max(max_k |b_k|, floor). Sizes must agree.
double max_relative_error(std::span<const double> a, std::span<const double> b,
                          double floor = kAbsoluteFloor);

/// |a - b| <= max(rel * max(|a|, |b|), floor).
bool approx_equal(double a, double b, double rel = kRelativeTolerance,
                  double floor = kAbsoluteFloor);

}  // namespace harsanyi

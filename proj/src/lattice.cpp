#include "harsanyi/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "harsanyi/error.hpp"

namespace harsanyi {

void check_variable_count(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw InvalidArgument("variable count " + std::to_string(n) + " outside 1.." +
                          std::to_string(kMaxVariables));
  }
  if (lattice_bytes(n) > kLatticeByteBudget) {
    throw InvalidArgument("lattice of " + std::to_string(n) + " variables exceeds memory budget");
  }
}

SubsetMask::SubsetMask(std::uint32_t bits, int n) : bits_(bits), n_(n) {
  check_variable_count(n);
  if (bits >= lattice_size(n)) {
    throw InvalidArgument("mask " + std::to_string(bits) + " out of range for n=" +
                          std::to_string(n));
  }
}

SubsetMask SubsetMask::full(int n) {
  check_variable_count(n);
  return {static_cast<std::uint32_t>(lattice_size(n) - 1), n};
}

std::string SubsetMask::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int j = 0; j < n_; ++j) {
    if (!contains(j)) continue;
    if (!first) os << ',';
    os << j;
    first = false;
  }
  os << '}';
  return os.str();
}

template <class Tag>
LatticeArray<Tag>::LatticeArray(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  check_variable_count(n);
  if (values_.size() != lattice_size(n)) {
    throw InvalidArgument("lattice array for n=" + std::to_string(n) + " needs " +
                          std::to_string(lattice_size(n)) + " entries, got " +
                          std::to_string(values_.size()));
  }
  for (std::size_t m = 0; m < values_.size(); ++m) {
    if (!std::isfinite(values_[m])) {
      throw InvalidArgument("non-finite entry at mask " + std::to_string(m));
    }
  }
}

template <class Tag>
double LatticeArray<Tag>::at(SubsetMask s) const {
  if (s.n() != n_) throw InvalidArgument("subset mask n does not match lattice n");
  return values_[s.bits()];
}

template class LatticeArray<MaskedOutputTag>;
template class LatticeArray<InteractionTag>;

bool SalientSet::contains(SubsetMask s) const {
  return std::binary_search(members.begin(), members.end(), s,
                            [](SubsetMask a, SubsetMask b) { return a.bits() < b.bits(); });
}

namespace {

// a[m] -= a[m \ {j}] over all j, in place.
void moebius_in_place(std::vector<double>& a, int n) {
  const std::size_t size = lattice_size(n);
  for (int j = 0; j < n; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t m = 0; m < size; ++m) {
      if (m & bit) a[m] -= a[m ^ bit];
    }
  }
}

void zeta_in_place(std::vector<double>& a, int n) {
  const std::size_t size = lattice_size(n);
  for (int j = 0; j < n; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t m = 0; m < size; ++m) {
      if (m & bit) a[m] += a[m ^ bit];
    }
  }
}

double max_abs(std::span<const double> xs) {
  double best = 0.0;
  for (double x : xs) best = std::max(best, std::abs(x));
  return best;
}

}  // namespace

InteractionVector mobius_transform(const MaskedOutputTable& table) {
  std::vector<double> a(table.values().begin(), table.values().end());
  moebius_in_place(a, table.n());
  return InteractionVector(table.n(), std::move(a));
}

InteractionVector mobius_brute(const MaskedOutputTable& table) {
  const int n = table.n();
  if (n > kBruteForceMaxVariables) {
    throw InvalidArgument("brute-force oracle limited to n <= " +
                          std::to_string(kBruteForceMaxVariables));
  }
  const std::size_t size = lattice_size(n);
  std::vector<double> out(size, 0.0);
  for (std::size_t s = 0; s < size; ++s) {
    const int order_s = std::popcount(s);
    double sum = 0.0;
    // Enumerate every T subset of S, including the empty set.
    for (std::size_t t = s;; t = (t - 1) & s) {
      const int sign_exponent = order_s - std::popcount(t);
      sum += (sign_exponent % 2 == 0 ? 1.0 : -1.0) * table[t];
      if (t == 0) break;
    }
    out[s] = sum;
  }
  return InteractionVector(n, std::move(out));
}

MaskedOutputTable zeta_transform(const InteractionVector& iv) {
  std::vector<double> a(iv.values().begin(), iv.values().end());
  zeta_in_place(a, iv.n());
  return MaskedOutputTable(iv.n(), std::move(a));
}

SalientSet select_salient(const InteractionVector& iv, double tau_ratio) {
  if (!(tau_ratio > 0.0 && tau_ratio < 1.0)) {
    throw InvalidArgument("tau_ratio must lie in (0, 1)");
  }
  SalientSet out;
  out.n = iv.n();
  out.tau_ratio = tau_ratio;
  out.tau = tau_ratio * max_abs(iv.values());
  for (std::size_t m = 0; m < iv.size(); ++m) {
    if (std::abs(iv[m]) > out.tau) {
      out.members.emplace_back(static_cast<std::uint32_t>(m), iv.n());
    }
  }
  return out;
}

double reconstruct_salient(const SalientSet& salient, const InteractionVector& iv, SubsetMask t) {
  if (salient.n != iv.n() || t.n() != iv.n()) {
    throw InvalidArgument("salient set, interaction vector and mask disagree on n");
  }
  double sum = 0.0;
  for (SubsetMask s : salient.members) {
    if (s.is_subset_of(t)) sum += iv.at(s);
  }
  return sum;
}

SparsityReport sparsity_report(const InteractionVector& iv, double tau_ratio) {
  const SalientSet salient = select_salient(iv, tau_ratio);
  SparsityReport report;
  report.salient_count = salient.members.size();
  report.total_count = iv.size();
  report.tau_ratio = tau_ratio;
  report.tau = salient.tau;

  // The residual of the salient-only reconstruction is the zeta transform of
  // the dropped (non-salient) dividends.
  std::vector<double> dropped(iv.values().begin(), iv.values().end());
  for (SubsetMask s : salient.members) dropped[s.bits()] = 0.0;
  zeta_in_place(dropped, iv.n());
  report.residual_max = max_abs(dropped);
  report.output_max = max_abs(zeta_transform(iv).values());
  return report;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

OrderProfile order_strength(std::span<const InteractionVector> ivs) {
  if (ivs.empty()) throw InvalidArgument("order_strength needs at least one vector");
  const int n = ivs.front().n();
  std::vector<double> sums(n + 1, 0.0);
  for (const InteractionVector& iv : ivs) {
    if (iv.n() != n) throw InvalidArgument("order_strength: mixed variable counts");
    for (std::size_t m = 0; m < iv.size(); ++m) sums[std::popcount(m)] += std::abs(iv[m]);
  }
  OrderProfile profile{n, std::vector<double>(n + 1, 0.0)};
  const double samples = static_cast<double>(ivs.size());
  for (int i = 0; i <= n; ++i) profile.per_order[i] = sums[i] / (samples * binomial(n, i));
  return profile;
}

double max_relative_error(std::span<const double> a, std::span<const double> b, double floor) {
  if (a.size() != b.size()) throw InvalidArgument("max_relative_error: size mismatch");
  double diff = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
  return diff / std::max(max_abs(b), floor);
}

bool approx_equal(double a, double b, double rel, double floor) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), floor);
}

}  // namespace harsanyi

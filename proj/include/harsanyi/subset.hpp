#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>

namespace harsanyi {

/// Hard cap on the number of players. A table of 2^24 doubles is 128 MiB.
inline constexpr int kMaxVariables = 24;

/// Byte budget admitted for one lattice array.
inline constexpr std::size_t kLatticeByteBudget = (std::size_t{1} << kMaxVariables) * sizeof(double);

/// Number of subsets of an n-variable ground set.
constexpr std::size_t lattice_size(int n) { return std::size_t{1} << n; }

/// Bytes needed to hold one lattice array over n variables.
constexpr std::size_t lattice_bytes(int n) { return lattice_size(n) * sizeof(double); }

/// Throws InvalidArgument unless 1 <= n <= kMaxVariables.
void check_variable_count(int n);

/// A subset of {0, ..., n-1} encoded little-endian: variable j is bit j.
class SubsetMask {
 public:
  SubsetMask(std::uint32_t bits, int n);

  std::uint32_t bits() const { return bits_; }
  int n() const { return n_; }
  int order() const { return std::popcount(bits_); }
  bool contains(int j) const { return (bits_ >> j) & 1U; }
  bool is_subset_of(SubsetMask other) const { return (bits_ & ~other.bits_) == 0; }

  static SubsetMask empty(int n) { return {0, n}; }
  static SubsetMask full(int n);

  /// Renders as "{0,2,5}".
  std::string to_string() const;

  friend bool operator==(SubsetMask, SubsetMask) = default;

 private:
  std::uint32_t bits_;
  int n_;
};

}  // namespace harsanyi

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qmpsig {

/// Strictly increasing list of qubit indices. Ordering is lexicographic on
/// the index list, which is the order public-key entries are stored in.
class QubitSubset {
 public:
  QubitSubset() = default;

  /// Throws InvalidArgument unless indices are non-negative and strictly increasing.
  explicit QubitSubset(std::vector<int> indices);

  /// {0, 1, ..., n-1}
  static QubitSubset first(int n);

  std::span<const int> indices() const { return indices_; }
  const std::vector<int>& vec() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  int operator[](std::size_t i) const { return indices_[i]; }

  bool contains(int qubit) const;
  bool is_subset_of(const QubitSubset& other) const;

  /// Position of qubit within this subset, or -1.
  int position_of(int qubit) const;

  /// Throws InvalidArgument if any index is >= num_qubits.
  void require_within(int num_qubits) const;

  /// Maps positions: returns {outer[i] for i in *this}.
  QubitSubset lift(const QubitSubset& outer) const;

  std::string to_string() const;

  friend auto operator<=>(const QubitSubset&, const QubitSubset&) = default;
  friend bool operator==(const QubitSubset&, const QubitSubset&) = default;

 private:
  std::vector<int> indices_;
};

/// Binomial coefficient; throws InvalidArgument on overflow or bad arguments.
std::uint64_t binomial(int n, int k);

}  // namespace qmpsig

#include "qmpsig/subset.hpp"

#include <algorithm>
#include <limits>

#include "qmpsig/error.hpp"

namespace qmpsig {

QubitSubset::QubitSubset(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) throw InvalidArgument("QubitSubset: negative index");
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw InvalidArgument("QubitSubset: indices must be strictly increasing: " + to_string());
    }
  }
}

QubitSubset QubitSubset::first(int n) {
  std::vector<int> v(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return QubitSubset(std::move(v));
}

bool QubitSubset::contains(int qubit) const {
  return std::binary_search(indices_.begin(), indices_.end(), qubit);
}

bool QubitSubset::is_subset_of(const QubitSubset& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

int QubitSubset::position_of(int qubit) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), qubit);
  if (it == indices_.end() || *it != qubit) return -1;
  return static_cast<int>(it - indices_.begin());
}

void QubitSubset::require_within(int num_qubits) const {
  if (!indices_.empty() && indices_.back() >= num_qubits) {
    throw InvalidArgument("qubit subset " + to_string() + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
  }
}

QubitSubset QubitSubset::lift(const QubitSubset& outer) const {
  std::vector<int> out;
  out.reserve(indices_.size());
  for (int p : indices_) {
    if (static_cast<std::size_t>(p) >= outer.size()) {
      throw InvalidArgument("QubitSubset::lift: position out of range");
    }
    out.push_back(outer[static_cast<std::size_t>(p)]);
  }
  return QubitSubset(std::move(out));
}

std::string QubitSubset::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(indices_[i]);
  }
  return s + "}";
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InvalidArgument("binomial: need 0 <= k <= n");
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const auto num = static_cast<std::uint64_t>(n - k + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num) throw InvalidArgument("binomial: overflow");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace qmpsig

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmpsig/matrix.hpp"

namespace qmpsig {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// Tensor product of single-qubit Paulis; position 0 is the most
/// significant qubit. Acts on basis states as
///   P|j> = i^{#Y} (-1)^{|j & zmask|} |j ^ xmask>.
class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> ops);
  static PauliString parse(std::string_view text);

  int num_qubits() const { return static_cast<int>(ops_.size()); }
  int weight() const;
  std::span<const Pauli> ops() const { return ops_; }
  Pauli operator[](std::size_t i) const { return ops_[i]; }

  /// Tr(m P).
  Complex expectation(const ComplexMatrix& m) const;

  /// m += coef * P.
  void add_to(ComplexMatrix& m, Complex coef) const;

  ComplexMatrix matrix() const;
  std::string to_string() const;

  friend bool operator==(const PauliString& a, const PauliString& b) { return a.ops_ == b.ops_; }

 private:
  Complex phase(std::uint64_t column) const;

  std::vector<Pauli> ops_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int num_y_ = 0;
};

/// All 4^n strings in lexicographic order over I < X < Y < Z.
std::vector<PauliString> all_pauli_strings(int num_qubits);

}  // namespace qmpsig

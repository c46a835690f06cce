#include "qmpsig/pauli.hpp"

#include <bit>

#include "qmpsig/error.hpp"

namespace qmpsig {

char pauli_char(Pauli p) {
  constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
  if (ops_.size() > 62) throw InvalidArgument("PauliString: too many qubits");
  const int n = num_qubits();
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (ops_[static_cast<std::size_t>(q)]) {
      case Pauli::I: break;
      case Pauli::X: x_mask_ |= bit; break;
      case Pauli::Y: x_mask_ |= bit; z_mask_ |= bit; ++num_y_; break;
      case Pauli::Z: z_mask_ |= bit; break;
    }
  }
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> ops;
  ops.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': ops.push_back(Pauli::I); break;
      case 'X': ops.push_back(Pauli::X); break;
      case 'Y': ops.push_back(Pauli::Y); break;
      case 'Z': ops.push_back(Pauli::Z); break;
      default: throw InvalidArgument("PauliString: bad character '" + std::string(1, c) + "'");
    }
  }
  return PauliString(std::move(ops));
}

int PauliString::weight() const {
  return std::popcount(x_mask_ | z_mask_);
}

Complex PauliString::phase(std::uint64_t column) const {
  static constexpr Complex kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = kIPow[num_y_ % 4];
  return (std::popcount(column & z_mask_) & 1) ? -base : base;
}

Complex PauliString::expectation(const ComplexMatrix& m) const {
  const Eigen::Index d = dim_for(num_qubits());
  if (m.rows() != d || m.cols() != d) throw InvalidArgument("PauliString::expectation: dimension mismatch");
  Complex acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto col = static_cast<std::uint64_t>(j);
    acc += m(j, static_cast<Eigen::Index>(col ^ x_mask_)) * phase(col);
  }
  return acc;
}

void PauliString::add_to(ComplexMatrix& m, Complex coef) const {
  const Eigen::Index d = dim_for(num_qubits());
  if (m.rows() != d || m.cols() != d) throw InvalidArgument("PauliString::add_to: dimension mismatch");
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto col = static_cast<std::uint64_t>(j);
    m(static_cast<Eigen::Index>(col ^ x_mask_), j) += coef * phase(col);
  }
}

ComplexMatrix PauliString::matrix() const {
  const Eigen::Index d = dim_for(num_qubits());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  add_to(m, 1.0);
  return m;
}

std::string PauliString::to_string() const {
  std::string s;
  for (Pauli p : ops_) s += pauli_char(p);
  return s;
}

std::vector<PauliString> all_pauli_strings(int num_qubits) {
  std::vector<PauliString> out;
  const std::size_t count = std::size_t{1} << (2 * num_qubits);
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<Pauli> ops(static_cast<std::size_t>(num_qubits));
    for (int q = 0; q < num_qubits; ++q) {
      ops[static_cast<std::size_t>(q)] = static_cast<Pauli>((code >> (2 * (num_qubits - 1 - q))) & 3U);
    }
    out.emplace_back(std::move(ops));
  }
  return out;
}

}  // namespace qmpsig

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmpsig/matrix.hpp"

namespace qmpsig {

/// Supported gates. The public key-generation gate set is {H, S, T, CNOT, RZ, RY};
/// X, the S/T adjoints and the two generated rotations HRot and CXRot exist
/// for inversion and for message encoding.
///
/// HRot(t) = exp(-i t H / 2) and CXRot(t) = exp(-i t CNOT / 2), i.e. the
/// one-parameter rotation generated by an involutory gate, analogous to RZ
/// being generated by Z.
enum class Gate : std::uint8_t { H, X, S, Sdg, T, Tdg, CNOT, RZ, RY, HRot, CXRot };

int arity(Gate g);
bool is_parametric(Gate g);
std::string_view gate_name(Gate g);
std::optional<Gate> parse_gate(std::string_view name);

/// Maps an angle into [0, 2*pi).
double normalize_angle(double theta);

struct GateOp {
  Gate gate = Gate::H;
  /// Ordered targets; for CNOT/CXRot targets[0] is the control.
  std::vector<int> targets;
  std::optional<double> param;

  /// Validates arity, distinct non-negative targets and parameter presence.
  static GateOp make(Gate gate, std::vector<int> targets, std::optional<double> param = std::nullopt);

  /// Throws InvalidArgument if any target is outside [0, num_qubits).
  void require_within(int num_qubits) const;

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

/// 2x2 or 4x4 unitary of op, with targets[0] as the most significant qubit.
ComplexMatrix gate_matrix(const GateOp& op);

/// Adjoint gate; parametric gates map theta to 2*pi - theta (mod 2*pi).
GateOp adjoint(const GateOp& op);

std::string to_string(const GateOp& op);

}  // namespace qmpsig

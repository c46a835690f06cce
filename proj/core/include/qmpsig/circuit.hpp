#pragma once

#include <cstdint>
#include <vector>

#include "qmpsig/density.hpp"
#include "qmpsig/gates.hpp"

namespace qmpsig {

/// Ordered gate list on a fixed register. Serves both as a private key
/// circuit and as a compiled message unitary.
struct Circuit {
  int num_qubits = 0;
  std::vector<GateOp> ops;
  /// Provenance tag; zero for circuits not produced by a seeded generator.
  std::uint64_t seed = 0;

  /// Throws InvalidArgument if any op is invalid for num_qubits.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Folds apply_gate over the ops.
DensityMatrix run_circuit(const DensityMatrix& rho, const Circuit& circuit);

/// Full 2^n x 2^n unitary (first op applied first).
ComplexMatrix circuit_unitary(const Circuit& circuit);

/// Number of moments under greedy as-soon-as-possible scheduling.
int circuit_depth(const Circuit& circuit);

}  // namespace qmpsig

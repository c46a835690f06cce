#include "qmpsig/circuit.hpp"

#include <algorithm>

#include "qmpsig/error.hpp"

namespace qmpsig {

void Circuit::validate() const {
  if (num_qubits < 1 || num_qubits > max_qubits()) {
    throw InvalidArgument("circuit qubit count " + std::to_string(num_qubits) + " outside [1, " +
                          std::to_string(max_qubits()) + "]");
  }
  for (const auto& op : ops) {
    // Re-run construction checks on ops that may have been assembled by hand.
    (void)GateOp::make(op.gate, op.targets, op.param);
    op.require_within(num_qubits);
  }
}

DensityMatrix run_circuit(const DensityMatrix& rho, const Circuit& circuit) {
  if (rho.num_qubits() != circuit.num_qubits) throw InvalidArgument("run_circuit: register size mismatch");
  DensityMatrix out = rho;
  for (const auto& op : circuit.ops) out = apply_gate(out, op);
  return out;
}

ComplexMatrix circuit_unitary(const Circuit& circuit) {
  const Eigen::Index d = dim_for(circuit.num_qubits);
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  const int n = circuit.num_qubits;
  for (const auto& op : circuit.ops) {
    op.require_within(n);
    // g on the target bits, identity elsewhere.
    const ComplexMatrix g = gate_matrix(op);
    const int k = static_cast<int>(op.targets.size());
    ComplexMatrix full = ComplexMatrix::Zero(d, d);
    Eigen::Index tmask = 0;
    for (int t : op.targets) tmask |= Eigen::Index{1} << (n - 1 - t);
    for (Eigen::Index col = 0; col < d; ++col) {
      Eigen::Index lc = 0;
      for (int j = 0; j < k; ++j) lc = (lc << 1) | ((col >> (n - 1 - op.targets[static_cast<std::size_t>(j)])) & 1);
      for (Eigen::Index lr = 0; lr < g.rows(); ++lr) {
        Eigen::Index row = col & ~tmask;
        for (int j = 0; j < k; ++j) {
          if ((lr >> (k - 1 - j)) & 1) row |= Eigen::Index{1} << (n - 1 - op.targets[static_cast<std::size_t>(j)]);
        }
        full(row, col) = g(lr, lc);
      }
    }
    u = full * u;
  }
  return u;
}

int circuit_depth(const Circuit& circuit) {
  std::vector<int> frontier(static_cast<std::size_t>(std::max(circuit.num_qubits, 0)), 0);
  int depth = 0;
  for (const auto& op : circuit.ops) {
    int start = 0;
    for (int t : op.targets) start = std::max(start, frontier.at(static_cast<std::size_t>(t)));
    for (int t : op.targets) frontier[static_cast<std::size_t>(t)] = start + 1;
    depth = std::max(depth, start + 1);
  }
  return depth;
}

}  // namespace qmpsig

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmpsig/circuit.hpp"
#include "qmpsig/density.hpp"
#include "qmpsig/rng.hpp"
#include "qmpsig/subset.hpp"

namespace qmpsig {

/// Circuit depth (in moments) per unit of the security parameter.
inline constexpr int kMomentsPerLambda = 4;

/// Every single-qubit marginal of a generated key state must have purity
/// strictly below this bound.
inline constexpr double kEntanglementPurityBound = 0.9;

/// Seeds tried by generate_circuit before giving up on the entanglement gate.
inline constexpr int kMaxEntanglementAttempts = 1000;

/// Private key: the circuit that prepares the key state from |0...0>.
struct PrivateKey {
  int lambda = 1;
  Circuit circuit;
  /// When present, equals prepare_state(circuit).
  std::optional<DensityMatrix> cached_state;

  int num_qubits() const { return circuit.num_qubits; }
  /// cached_state if present, otherwise recomputed from the circuit.
  DensityMatrix state() const;
};

struct PublicKeyEntry {
  QubitSubset subset;
  DensityMatrix marginal;
};

/// All k-qubit marginals of the key state, sorted lexicographically by subset.
struct PublicKey {
  int num_qubits = 0;
  int k = 0;
  int lambda = 0;
  std::vector<PublicKeyEntry> entries;

  /// Entry for a global subset, or nullptr.
  const PublicKeyEntry* find(const QubitSubset& subset) const;

  /// Checks coverage of all (N choose k) subsets, ordering and marginal validity.
  void validate() const;
};

struct KeyPair {
  PrivateKey private_key;
  PublicKey public_key;
};

/// One layer is RY on every qubit, CNOTs on a random matching, RZ on every
/// qubit and CNOTs on a second random matching.
Circuit random_layered_circuit(int num_qubits, int layers, Rng& rng);

/// lambda layers of random_layered_circuit. Deterministic in seed. Seeds
/// seed, seed + 1, ... are tried until every single-qubit marginal has
/// purity below kEntanglementPurityBound; the accepted seed is recorded in
/// the returned circuit.
Circuit generate_circuit(int lambda, int num_qubits, std::uint64_t seed);

/// Runs the circuit on |0...0><0...0|.
DensityMatrix prepare_state(const Circuit& circuit);

/// All size-k subsets of [0, n) in lexicographic order.
std::vector<QubitSubset> enumerate_subsets(int n, int k);

/// Exact k-qubit marginals of state.
PublicKey derive_public_key(const DensityMatrix& state, int k, int lambda);

KeyPair keygen(int lambda, int num_qubits, int k, std::uint64_t seed);

/// Largest single-qubit marginal purity.
double max_single_qubit_purity(const DensityMatrix& state);

}  // namespace qmpsig

#include "qmpsig/keygen.hpp"

#include <algorithm>
#include <numeric>

#include "qmpsig/error.hpp"

namespace qmpsig {
namespace {

void append_matching(Circuit& c, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(c.num_qubits));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    int control = order[i], target = order[i + 1];
    if (rng.below(2) == 1) std::swap(control, target);
    c.ops.push_back(GateOp::make(Gate::CNOT, {control, target}));
  }
}

void check_register(int num_qubits) {
  if (num_qubits < 2) throw InvalidArgument("key register needs N >= 2");
  if (num_qubits > max_qubits()) {
    throw InvalidArgument("N = " + std::to_string(num_qubits) + " exceeds ambient cap of " +
                          std::to_string(max_qubits()) + " qubits");
  }
}

}  // namespace

DensityMatrix PrivateKey::state() const {
  if (cached_state) return *cached_state;
  return prepare_state(circuit);
}

const PublicKeyEntry* PublicKey::find(const QubitSubset& subset) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), subset,
                             [](const PublicKeyEntry& e, const QubitSubset& s) { return e.subset < s; });
  if (it == entries.end() || it->subset != subset) return nullptr;
  return &*it;
}

void PublicKey::validate() const {
  if (k < 1 || k >= num_qubits) throw InvalidArgument("public key needs 1 <= k < N");
  const auto expected = enumerate_subsets(num_qubits, k);
  if (entries.size() != expected.size()) {
    throw InvalidArgument("public key has " + std::to_string(entries.size()) + " entries, expected " +
                          std::to_string(expected.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (entries[i].subset != expected[i]) {
      throw InvalidArgument("public key entry " + std::to_string(i) + " has subset " +
                            entries[i].subset.to_string() + ", expected " + expected[i].to_string());
    }
    if (entries[i].marginal.num_qubits() != k) throw InvalidArgument("public key marginal has wrong size");
    if (!validate_density(entries[i].marginal.matrix()).valid) {
      throw InvalidArgument("public key marginal " + expected[i].to_string() + " is not a density matrix");
    }
  }
}

Circuit random_layered_circuit(int num_qubits, int layers, Rng& rng) {
  Circuit c;
  c.num_qubits = num_qubits;
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < num_qubits; ++q) c.ops.push_back(GateOp::make(Gate::RY, {q}, rng.angle()));
    append_matching(c, rng);
    for (int q = 0; q < num_qubits; ++q) c.ops.push_back(GateOp::make(Gate::RZ, {q}, rng.angle()));
    append_matching(c, rng);
  }
  return c;
}

Circuit generate_circuit(int lambda, int num_qubits, std::uint64_t seed) {
  if (lambda < 1) throw InvalidArgument("lambda must be >= 1");
  check_register(num_qubits);
  for (int attempt = 0; attempt < kMaxEntanglementAttempts; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    Rng rng(s);
    Circuit c = random_layered_circuit(num_qubits, lambda, rng);
    c.seed = s;
    if (max_single_qubit_purity(prepare_state(c)) < kEntanglementPurityBound) return c;
  }
  throw InvalidArgument("no circuit met the entanglement gate within " +
                        std::to_string(kMaxEntanglementAttempts) + " seeds (lambda=" + std::to_string(lambda) +
                        ", N=" + std::to_string(num_qubits) + ")");
}

DensityMatrix prepare_state(const Circuit& circuit) {
  circuit.validate();
  return run_circuit(DensityMatrix::basis_state(circuit.num_qubits, 0), circuit);
}

std::vector<QubitSubset> enumerate_subsets(int n, int k) {
  if (k < 1 || n < 1 || k > n) throw InvalidArgument("enumerate_subsets: need 1 <= k <= N");
  std::vector<QubitSubset> out;
  out.reserve(binomial(n, k));
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.emplace_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

PublicKey derive_public_key(const DensityMatrix& state, int k, int lambda) {
  const int n = state.num_qubits();
  if (k < 1 || k >= n) throw InvalidArgument("public key needs 1 <= k < N");
  PublicKey pk;
  pk.num_qubits = n;
  pk.k = k;
  pk.lambda = lambda;
  for (auto& subset : enumerate_subsets(n, k)) {
    DensityMatrix marginal = partial_trace(state, subset);
    pk.entries.push_back({std::move(subset), std::move(marginal)});
  }
  return pk;
}

KeyPair keygen(int lambda, int num_qubits, int k, std::uint64_t seed) {
  check_register(num_qubits);
  if (k < 1 || k >= num_qubits) throw InvalidArgument("keygen needs 1 <= k < N");
  PrivateKey sk;
  sk.lambda = lambda;
  sk.circuit = generate_circuit(lambda, num_qubits, seed);
  sk.cached_state = prepare_state(sk.circuit);
  PublicKey pk = derive_public_key(*sk.cached_state, k, lambda);
  return {std::move(sk), std::move(pk)};
}

double max_single_qubit_purity(const DensityMatrix& state) {
  double worst = 0.0;
  for (int q = 0; q < state.num_qubits(); ++q) {
    worst = std::max(worst, partial_trace(state, QubitSubset({q})).purity());
  }
  return worst;
}

}  // namespace qmpsig

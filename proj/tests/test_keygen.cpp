#include <gtest/gtest.h>

#include "qmpsig/error.hpp"
#include "qmpsig/keygen.hpp"
#include "qmpsig/serialize.hpp"
#include "support.hpp"

namespace qmpsig {
namespace {

using test::max_abs;

TEST(GenerateCircuit, Deterministic) {
  EXPECT_EQ(generate_circuit(1, 2, 7), generate_circuit(1, 2, 7));
}

TEST(GenerateCircuit, DepthAndTargetsWithinBounds) {
  const auto c = generate_circuit(4, 4, 1);
  const int depth = circuit_depth(c);
  EXPECT_GE(depth, 4);
  EXPECT_LE(depth, 4 * kMomentsPerLambda);
  for (const auto& op : c.ops) {
    for (int t : op.targets) EXPECT_LT(t, 4);
  }
}

TEST(GenerateCircuit, UsesOnlyPublicGateSet) {
  for (const auto& op : generate_circuit(3, 5, 2).ops) {
    EXPECT_TRUE(op.gate == Gate::H || op.gate == Gate::S || op.gate == Gate::T || op.gate == Gate::CNOT ||
                op.gate == Gate::RZ || op.gate == Gate::RY)
        << to_string(op);
  }
}

TEST(GenerateCircuit, SingleQubitMarginalsAreMixed) {
  const auto state = prepare_state(generate_circuit(6, 6, 3));
  for (int q = 0; q < 6; ++q) EXPECT_LT(partial_trace(state, QubitSubset({q})).purity(), kEntanglementPurityBound);
}

TEST(GenerateCircuit, RejectsBadParameters) {
  EXPECT_THROW(generate_circuit(0, 3, 1), InvalidArgument);
  EXPECT_THROW(generate_circuit(1, 1, 1), InvalidArgument);
  EXPECT_THROW(generate_circuit(1, 13, 1), InvalidArgument);
}

TEST(PrepareState, EmptyCircuitIsAllZeros) {
  const auto rho = prepare_state(Circuit{.num_qubits = 2});
  EXPECT_LT(max_abs(rho.matrix() - DensityMatrix::basis_state(2, 0).matrix()), 1e-15);
}

TEST(PrepareState, HadamardCnotIsBell) {
  const auto rho = prepare_state(Circuit{.num_qubits = 2,
                                         .ops = {GateOp::make(Gate::H, {0}), GateOp::make(Gate::CNOT, {0, 1})}});
  EXPECT_LT(max_abs(rho.matrix() - test::bell_phi_plus().matrix()), 1e-15);
}

TEST(PrepareState, GeneratedStatesArePure) {
  for (std::uint64_t seed : {1, 2, 3}) EXPECT_NEAR(prepare_state(generate_circuit(2, 5, seed)).purity(), 1.0, 1e-9);
}

TEST(EnumerateSubsets, Examples) {
  const auto s32 = enumerate_subsets(3, 2);
  ASSERT_EQ(s32.size(), 3U);
  EXPECT_EQ(s32[0], QubitSubset({0, 1}));
  EXPECT_EQ(s32[1], QubitSubset({0, 2}));
  EXPECT_EQ(s32[2], QubitSubset({1, 2}));
  const auto s41 = enumerate_subsets(4, 1);
  ASSERT_EQ(s41.size(), 4U);
  for (int q = 0; q < 4; ++q) EXPECT_EQ(s41[q], QubitSubset({q}));
  EXPECT_EQ(enumerate_subsets(6, 3).size(), 20U);
}

TEST(Keygen, StructureOfSmallKey) {
  const auto keys = keygen(2, 3, 1, 5);
  ASSERT_EQ(keys.public_key.entries.size(), 3U);
  for (const auto& e : keys.public_key.entries) {
    EXPECT_EQ(e.marginal.dim(), 2);
    EXPECT_TRUE(validate_density(e.marginal.matrix()).valid);
  }
  EXPECT_NO_THROW(keys.public_key.validate());
}

TEST(Keygen, BellKeyHasMaximallyMixedMarginals) {
  const Circuit bell{.num_qubits = 2, .ops = {GateOp::make(Gate::H, {0}), GateOp::make(Gate::CNOT, {0, 1})}};
  const auto pk = derive_public_key(prepare_state(bell), 1, 1);
  ASSERT_EQ(pk.entries.size(), 2U);
  for (const auto& e : pk.entries) {
    EXPECT_LT(max_abs(e.marginal.matrix() - DensityMatrix::maximally_mixed(1).matrix()), 1e-15);
  }
}

TEST(Keygen, MarginalsAreExactPartialTraces) {
  const auto keys = keygen(2, 4, 2, 9);
  const auto state = keys.private_key.state();
  for (const auto& e : keys.public_key.entries) {
    const auto oracle = test::naive_partial_trace(state.matrix(), 4, e.subset.vec());
    EXPECT_LT(max_abs(e.marginal.matrix() - oracle), 1e-12);
  }
}

TEST(Keygen, RejectsKNotBelowN) {
  EXPECT_THROW(keygen(1, 3, 3, 1), InvalidArgument);
  EXPECT_THROW(keygen(1, 3, 0, 1), InvalidArgument);
}

TEST(Keygen, SerializedPublicKeyIsDeterministic) {
  const auto a = to_json(keygen(2, 5, 2, 17).public_key).dump();
  const auto b = to_json(keygen(2, 5, 2, 17).public_key).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, to_json(keygen(2, 5, 2, 117).public_key).dump());
}

TEST(PublicKey, ValidateCatchesMissingEntry) {
  auto pk = keygen(1, 3, 1, 4).public_key;
  pk.entries.pop_back();
  EXPECT_THROW(pk.validate(), InvalidArgument);
  EXPECT_EQ(pk.find(QubitSubset({2})), nullptr);
}

}  // namespace
}  // namespace qmpsig

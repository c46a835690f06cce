#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmpsig/circuit.hpp"
#include "qmpsig/density.hpp"
#include "qmpsig/error.hpp"
#include "qmpsig/gates.hpp"
#include "qmpsig/matrix.hpp"
#include "qmpsig/pauli.hpp"
#include "support.hpp"

namespace qmpsig {
namespace {

using test::max_abs;

ComplexMatrix pauli_x() { return PauliString::parse("X").matrix(); }
ComplexMatrix hadamard() { return gate_matrix(GateOp::make(Gate::H, {0})); }

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_LT(max_abs(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) - ComplexMatrix::Identity(4, 4)),
            1e-15);
}

TEST(Kron, XOnFirstQubitFlipsMostSignificantBit) {
  ComplexVector ket = ComplexVector::Zero(4);
  ket(0) = 1.0;
  const ComplexVector out = kron(pauli_x(), ComplexMatrix::Identity(2, 2)) * ket;
  EXPECT_NEAR(std::abs(out(2)), 1.0, 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(Kron, HadamardPairGivesUniformAmplitudes) {
  ComplexVector ket = ComplexVector::Zero(4);
  ket(0) = 1.0;
  const ComplexVector out = kron(hadamard(), hadamard()) * ket;
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out(i) - Complex(0.5, 0)), 0.0, 1e-15);
}

TEST(Kron, RejectsResultAboveCap) {
  const ComplexMatrix big = ComplexMatrix::Identity(dim_for(7), dim_for(7));
  EXPECT_THROW(kron(big, big), InvalidArgument);
}

TEST(ApplyGate, XFlipsZero) {
  const auto out = apply_gate(DensityMatrix::basis_state(1, 0), GateOp::make(Gate::X, {0}));
  EXPECT_LT(max_abs(out.matrix() - DensityMatrix::basis_state(1, 1).matrix()), 1e-15);
}

TEST(ApplyGate, HadamardIsInvolution) {
  std::mt19937_64 gen(11);
  const auto rho = test::random_state(3, gen);
  const auto h = GateOp::make(Gate::H, {1});
  EXPECT_LT(max_abs(apply_gate(apply_gate(rho, h), h).matrix() - rho.matrix()), 1e-12);
}

TEST(ApplyGate, HadamardThenCnotMakesBellState) {
  auto rho = apply_gate(DensityMatrix::basis_state(2, 0), GateOp::make(Gate::H, {0}));
  rho = apply_gate(rho, GateOp::make(Gate::CNOT, {0, 1}));
  EXPECT_LT(max_abs(rho.matrix() - test::bell_phi_plus().matrix()), 1e-15);
}

TEST(ApplyGate, CnotDirectionMatters) {
  // |10> under CNOT(0->1) is |11>, under CNOT(1->0) stays |10>.
  const auto ket10 = DensityMatrix::basis_state(2, 2);
  EXPECT_NEAR(apply_gate(ket10, GateOp::make(Gate::CNOT, {0, 1})).matrix()(3, 3).real(), 1.0, 1e-15);
  EXPECT_NEAR(apply_gate(ket10, GateOp::make(Gate::CNOT, {1, 0})).matrix()(2, 2).real(), 1.0, 1e-15);
}

TEST(ApplyGate, RejectsOutOfRangeTarget) {
  EXPECT_THROW(apply_gate(DensityMatrix::basis_state(2, 0), GateOp::make(Gate::H, {2})), InvalidArgument);
}

TEST(ApplyGate, GateThenAdjointIsIdentity) {
  std::mt19937_64 gen(5);
  const auto rho = test::random_state(3, gen);
  const std::vector<GateOp> ops = {
      GateOp::make(Gate::H, {2}),          GateOp::make(Gate::X, {0}),
      GateOp::make(Gate::S, {1}),          GateOp::make(Gate::T, {0}),
      GateOp::make(Gate::CNOT, {2, 0}),    GateOp::make(Gate::RZ, {1}, 0.7),
      GateOp::make(Gate::RY, {2}, 2.1),    GateOp::make(Gate::HRot, {0}, 1.3),
      GateOp::make(Gate::CXRot, {1, 2}, 4.0)};
  for (const auto& op : ops) {
    const auto back = apply_gate(apply_gate(rho, op), adjoint(op));
    EXPECT_LT(max_abs(back.matrix() - rho.matrix()), 1e-10) << to_string(op);
  }
}

TEST(ApplyGate, PreservesTrace) {
  std::mt19937_64 gen(6);
  const auto rho = test::random_state(4, gen);
  const auto out = apply_gate(rho, GateOp::make(Gate::CXRot, {3, 1}, 0.4));
  EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, BellSingleQubitIsMaximallyMixed) {
  const auto red = partial_trace(test::bell_phi_plus(), QubitSubset({0}));
  EXPECT_LT(max_abs(red.matrix() - DensityMatrix::maximally_mixed(1).matrix()), 1e-15);
}

TEST(PartialTrace, ProductStateRecoversFactor) {
  std::mt19937_64 gen(2);
  const auto a = test::random_state(2, gen);
  const auto b = test::random_state(1, gen);
  EXPECT_LT(max_abs(partial_trace(tensor(a, b), QubitSubset({0, 1})).matrix() - a.matrix()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(tensor(a, b), QubitSubset({2})).matrix() - b.matrix()), 1e-14);
}

TEST(PartialTrace, GhzPairMatchesIndexSummation) {
  const auto rho = test::ghz(3);
  const auto red = partial_trace(rho, QubitSubset({0, 1}));
  const auto oracle = test::naive_partial_trace(rho.matrix(), 3, {0, 1});
  EXPECT_LT(max_abs(red.matrix() - oracle), 1e-15);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LT(max_abs(red.matrix() - expected), 1e-15);
}

TEST(PartialTrace, KeepingEverythingIsExact) {
  std::mt19937_64 gen(3);
  const auto rho = test::random_state(3, gen);
  EXPECT_EQ(partial_trace(rho, QubitSubset::first(3)).matrix(), rho.matrix());
}

TEST(PartialTrace, EmptySubsetGivesUnitScalar) {
  const auto red = partial_trace(test::ghz(2), QubitSubset{});
  ASSERT_EQ(red.dim(), 1);
  EXPECT_NEAR(red.matrix()(0, 0).real(), 1.0, 1e-15);
}

TEST(PartialTrace, NestedTracesAgree) {
  std::mt19937_64 gen(4);
  const auto rho = test::random_state(5, gen);
  const QubitSubset b({0, 2, 3, 4});
  const QubitSubset a({2, 4});
  const QubitSubset a_in_b({b.position_of(2), b.position_of(4)});
  const auto nested = partial_trace(partial_trace(rho, b), a_in_b);
  EXPECT_LT(max_abs(nested.matrix() - partial_trace(rho, a).matrix()), 1e-12);
}

TEST(PartialTrace, RejectsOutOfRangeSubset) {
  EXPECT_THROW(partial_trace(test::ghz(2), QubitSubset({0, 2})), InvalidArgument);
}

TEST(TraceDistance, Examples) {
  const auto zero = DensityMatrix::basis_state(1, 0);
  const auto one = DensityMatrix::basis_state(1, 1);
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(zero, DensityMatrix::maximally_mixed(1)), 0.5, 1e-12);
}

TEST(TraceDistance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = test::random_state(2, gen, 1 + trial % 4);
    const auto b = test::random_state(2, gen);
    const auto c = test::random_state(2, gen, 1);
    const double ab = trace_distance(a, b), ba = trace_distance(b, a);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-12);
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-12);
    EXPECT_LE(trace_distance(a, c), ab + trace_distance(b, c) + 1e-12);
  }
}

TEST(TraceDistance, RejectsDimensionMismatch) {
  EXPECT_THROW(trace_distance(DensityMatrix::maximally_mixed(1), DensityMatrix::maximally_mixed(2)), InvalidArgument);
}

TEST(Depolarize, Examples) {
  std::mt19937_64 gen(9);
  const auto rho = test::random_state(2, gen);
  EXPECT_LT(max_abs(depolarize(rho, 0.0).matrix() - rho.matrix()), 1e-15);
  EXPECT_LT(max_abs(depolarize(rho, 1.0).matrix() - DensityMatrix::maximally_mixed(2).matrix()), 1e-15);
  const auto out = depolarize(DensityMatrix::basis_state(1, 0), 0.2);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 0.9;
  expected(1, 1) = 0.1;
  EXPECT_LT(max_abs(out.matrix() - expected), 1e-15);
  EXPECT_NEAR(depolarize(rho, 0.37).matrix().trace().real(), 1.0, 1e-12);
}

TEST(Depolarize, RejectsProbabilityOutsideUnitInterval) {
  EXPECT_THROW(depolarize(DensityMatrix::maximally_mixed(1), 1.5), InvalidArgument);
  EXPECT_THROW(depolarize(DensityMatrix::maximally_mixed(1), -0.1), InvalidArgument);
}

TEST(ValidateDensity, Examples) {
  EXPECT_TRUE(validate_density(DensityMatrix::maximally_mixed(1).matrix()).valid);

  ComplexMatrix over = ComplexMatrix::Zero(2, 2);
  over(0, 0) = over(1, 1) = 0.6;
  const auto d1 = validate_density(over);
  EXPECT_FALSE(d1.valid);
  EXPECT_NEAR(d1.trace_defect, 0.2, 1e-12);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  const auto d2 = validate_density(neg);
  EXPECT_FALSE(d2.valid);
  EXPECT_NEAR(d2.min_eigenvalue, -0.1, 1e-12);
}

TEST(ValidateDensity, NonHermitianAndMalformedInputs) {
  ComplexMatrix m = DensityMatrix::maximally_mixed(1).matrix();
  m(0, 1) = Complex(0.1, 0);
  EXPECT_FALSE(validate_density(m).valid);
  EXPECT_NEAR(validate_density(m).hermiticity_defect, 0.1, 1e-12);
  EXPECT_FALSE(validate_density(ComplexMatrix::Identity(3, 3) / 3.0).valid);
  EXPECT_FALSE(validate_density(ComplexMatrix::Zero(2, 3)).valid);
  EXPECT_THROW(DensityMatrix::from_matrix(m), InvalidArgument);
}

TEST(ProjectToDensity, FixesValidInputAndRepairsInvalid) {
  std::mt19937_64 gen(12);
  const auto rho = test::random_state(2, gen);
  EXPECT_LT(max_abs(project_to_density(rho.matrix()).matrix() - rho.matrix()), 1e-10);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  const auto fixed = project_to_density(neg);
  EXPECT_TRUE(validate_density(fixed.matrix()).valid);
  EXPECT_NEAR(fixed.matrix()(0, 0).real(), 1.0, 1e-12);
}

TEST(Pauli, ExpectationsOnBellState) {
  const auto bell = test::bell_phi_plus().matrix();
  EXPECT_NEAR(PauliString::parse("ZZ").expectation(bell).real(), 1.0, 1e-15);
  EXPECT_NEAR(PauliString::parse("XX").expectation(bell).real(), 1.0, 1e-15);
  EXPECT_NEAR(PauliString::parse("YY").expectation(bell).real(), -1.0, 1e-15);
  EXPECT_NEAR(PauliString::parse("ZI").expectation(bell).real(), 0.0, 1e-15);
}

TEST(Pauli, MatrixMatchesKronOfFactors) {
  const auto xyz = PauliString::parse("XYZ").matrix();
  const auto ref = kron(kron(PauliString::parse("X").matrix(), PauliString::parse("Y").matrix()),
                        PauliString::parse("Z").matrix());
  EXPECT_LT(max_abs(xyz - ref), 1e-15);
}

TEST(Circuit, UnitaryMatchesRunCircuit) {
  std::mt19937_64 gen(13);
  const auto rho = test::random_state(3, gen);
  Circuit c{.num_qubits = 3,
            .ops = {GateOp::make(Gate::H, {0}), GateOp::make(Gate::CNOT, {0, 2}), GateOp::make(Gate::RY, {1}, 0.3)}};
  const auto u = circuit_unitary(c);
  EXPECT_LT(max_abs(u * u.adjoint() - ComplexMatrix::Identity(8, 8)), 1e-12);
  EXPECT_LT(max_abs(run_circuit(rho, c).matrix() - apply_unitary(rho, u).matrix()), 1e-12);
  EXPECT_EQ(circuit_depth(c), 2);
}

TEST(Subset, ValidationAndLift) {
  EXPECT_THROW(QubitSubset({1, 1}), InvalidArgument);
  EXPECT_THROW(QubitSubset({2, 1}), InvalidArgument);
  EXPECT_THROW(QubitSubset({-1}), InvalidArgument);
  EXPECT_EQ(QubitSubset({0, 2}).lift(QubitSubset({1, 3, 5})), QubitSubset({1, 5}));
  EXPECT_EQ(binomial(6, 3), 20U);
}

}  // namespace
}  // namespace qmpsig

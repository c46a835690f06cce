#include <gtest/gtest.h>

#include "qmpsig/density.hpp"
#include "qmpsig/error.hpp"
#include "qmpsig/keygen.hpp"
#include "qmpsig/matrix.hpp"

// Runs with QMPSIG_MAX_QUBITS=3 (set by ctest).
namespace qmpsig {
namespace {

TEST(AmbientCap, EnvironmentLowersCap) {
  EXPECT_EQ(max_qubits(), 3);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
  EXPECT_THROW(DensityMatrix::maximally_mixed(4), InvalidArgument);
  EXPECT_THROW(keygen(1, 4, 1, 1), InvalidArgument);
  const ComplexMatrix four = ComplexMatrix::Identity(4, 4);
  EXPECT_THROW(kron(four, four), InvalidArgument);
}

}  // namespace
}  // namespace qmpsig

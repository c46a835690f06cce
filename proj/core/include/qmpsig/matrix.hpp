#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qmpsig {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Hard ambient limit on the number of simulated qubits.
inline constexpr int kHardQubitCap = 12;

/// Effective ambient cap: QMPSIG_MAX_QUBITS when set (clamped to
/// [1, kHardQubitCap]), otherwise kHardQubitCap.
int max_qubits();

/// 2^n as a matrix dimension.
inline Eigen::Index dim_for(int num_qubits) { return Eigen::Index{1} << num_qubits; }

/// log2(dim) if dim is a positive power of two, otherwise -1.
int qubits_for_dim(Eigen::Index dim);

/// Kronecker product. Throws InvalidArgument when either result dimension
/// exceeds 2^max_qubits().
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool all_finite(const ComplexMatrix& m);

/// Eigenvalues of the Hermitian part of m, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Largest absolute entry of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

}  // namespace qmpsig

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qmpsig/gates.hpp"
#include "qmpsig/matrix.hpp"
#include "qmpsig/subset.hpp"

namespace qmpsig {

struct DensityTolerance {
  double hermiticity = 1e-9;
  double trace = 1e-9;
  double psd = 1e-8;
};

struct DensityDiagnostics {
  bool valid = false;
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
};

/// Pure report; never throws. Non-square, non-power-of-two or non-finite
/// input is reported invalid with infinite defects.
DensityDiagnostics validate_density(const ComplexMatrix& m, const DensityTolerance& tol = {});
DensityDiagnostics validate_density(const ComplexMatrix& m, double tol);

/// Positive semidefinite, unit-trace, Hermitian 2^n x 2^n matrix. Immutable.
class DensityMatrix {
 public:
  /// Validates against the default tolerances; throws InvalidArgument.
  static DensityMatrix from_matrix(ComplexMatrix m);

  /// Skips eigenvalue validation. For results of channels applied to valid
  /// states, where the invariants hold by construction.
  static DensityMatrix assume_valid(ComplexMatrix m);

  /// |v><v| for a unit vector v.
  static DensityMatrix from_pure(const ComplexVector& v);
  static DensityMatrix basis_state(int num_qubits, std::uint64_t index);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  double purity() const;

 private:
  DensityMatrix(int num_qubits, ComplexMatrix m) : num_qubits_(num_qubits), matrix_(std::move(m)) {}

  int num_qubits_ = 0;
  ComplexMatrix matrix_;
};

/// U rho U^dagger with op's gate embedded at its targets.
DensityMatrix apply_gate(const DensityMatrix& rho, const GateOp& op);

/// U rho U^dagger for a full-dimension unitary U.
DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u);

/// Reduced state on `keep`, in the order of `keep`. An empty subset gives
/// the 1x1 matrix [1].
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep);

/// Half the trace norm of a - b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// (1 - p) rho + p I / 2^n.
DensityMatrix depolarize(const DensityMatrix& rho, double p);

/// (1 - w) a + w b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> values);

/// Frobenius-nearest density matrix to the Hermitian part of m
/// (eigenvalues projected onto the simplex).
DensityMatrix project_to_density(const ComplexMatrix& m);

}  // namespace qmpsig

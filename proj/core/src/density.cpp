#include "qmpsig/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "qmpsig/error.hpp"

namespace qmpsig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_ambient(int n) {
  if (n > max_qubits()) {
    throw InvalidArgument("state on " + std::to_string(n) + " qubits exceeds ambient cap of " +
                          std::to_string(max_qubits()));
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

void make_hermitian(ComplexMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    m(c, c) = m(c, c).real();
    for (Eigen::Index r = c + 1; r < m.rows(); ++r) {
      const Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
      m(r, c) = avg;
      m(c, r) = std::conj(avg);
    }
  }
}

// Row offsets of the 2^k local basis states of `targets` inside an n-qubit index.
std::vector<Eigen::Index> local_offsets(std::span<const int> targets, int n) {
  const std::size_t k = targets.size();
  std::vector<Eigen::Index> off(std::size_t{1} << k, 0);
  for (std::size_t l = 0; l < off.size(); ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1U) off[l] |= Eigen::Index{1} << (n - 1 - targets[j]);
    }
  }
  return off;
}

// Plain complex product; std::complex operator* goes through the
// NaN-recovering library routine, which dominates the gate loops.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// m <- U_embedded * m, where U acts on `targets` (at most two qubits).
void left_apply(ComplexMatrix& m, const ComplexMatrix& u, std::span<const int> targets, int n) {
  const auto off = local_offsets(targets, n);
  const Eigen::Index mask = off.back();
  const std::size_t g = off.size();
  std::array<Complex, 16> uu{};
  for (std::size_t l = 0; l < g; ++l)
    for (std::size_t j = 0; j < g; ++j) uu[l * g + j] = u(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
  std::array<Complex, 4> in{};
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Complex* col = m.col(c).data();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if ((r & mask) != 0) continue;
      for (std::size_t l = 0; l < g; ++l) in[l] = col[r + off[l]];
      for (std::size_t l = 0; l < g; ++l) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < g; ++j) acc += mul(uu[l * g + j], in[j]);
        col[r + off[l]] = acc;
      }
    }
  }
}

// m <- m * U_embedded^dagger.
void right_apply_adjoint(ComplexMatrix& m, const ComplexMatrix& u, std::span<const int> targets, int n) {
  const auto off = local_offsets(targets, n);
  const Eigen::Index mask = off.back();
  const std::size_t g = off.size();
  std::array<Complex, 16> ubar{};
  for (std::size_t l = 0; l < g; ++l)
    for (std::size_t j = 0; j < g; ++j)
      ubar[l * g + j] = std::conj(u(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)));
  std::array<Complex*, 4> cols{};
  std::array<Complex, 4> in{};
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if ((c & mask) != 0) continue;
    for (std::size_t l = 0; l < g; ++l) cols[l] = m.col(c + off[l]).data();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (std::size_t l = 0; l < g; ++l) in[l] = cols[l][r];
      for (std::size_t l = 0; l < g; ++l) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < g; ++j) acc += mul(in[j], ubar[l * g + j]);
        cols[l][r] = acc;
      }
    }
  }
}

}  // namespace

DensityDiagnostics validate_density(const ComplexMatrix& m, const DensityTolerance& tol) {
  DensityDiagnostics d;
  if (m.rows() != m.cols() || qubits_for_dim(m.rows()) < 0 || !all_finite(m)) {
    d.hermiticity_defect = d.trace_defect = kInf;
    d.min_eigenvalue = -kInf;
    return d;
  }
  d.hermiticity_defect = hermiticity_defect(m);
  d.trace_defect = std::abs(m.trace() - Complex{1.0, 0.0});
  d.min_eigenvalue = hermitian_eigenvalues(m).minCoeff();
  d.valid = d.hermiticity_defect <= tol.hermiticity && d.trace_defect <= tol.trace &&
            d.min_eigenvalue >= -tol.psd;
  return d;
}

DensityDiagnostics validate_density(const ComplexMatrix& m, double tol) {
  return validate_density(m, DensityTolerance{tol, tol, tol});
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  const auto diag = validate_density(m);
  if (!diag.valid) {
    std::ostringstream os;
    os << "not a density matrix: hermiticity defect " << diag.hermiticity_defect << ", trace defect "
       << diag.trace_defect << ", min eigenvalue " << diag.min_eigenvalue;
    throw InvalidArgument(os.str());
  }
  const int n = qubits_for_dim(m.rows());
  require_ambient(n);
  return DensityMatrix(n, hermitian_part(m));
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix m) {
  const int n = qubits_for_dim(m.rows());
  if (m.rows() != m.cols() || n < 0) throw InvalidArgument("density matrix must be 2^n x 2^n");
  require_ambient(n);
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& v) {
  const int n = qubits_for_dim(v.size());
  if (n < 0) throw InvalidArgument("state vector length must be a power of two");
  if (std::abs(v.norm() - 1.0) > 1e-9) throw InvalidArgument("state vector must have unit norm");
  require_ambient(n);
  return DensityMatrix(n, v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int num_qubits, std::uint64_t index) {
  if (num_qubits < 0) throw InvalidArgument("negative qubit count");
  require_ambient(num_qubits);
  const Eigen::Index d = dim_for(num_qubits);
  if (index >= static_cast<std::uint64_t>(d)) throw InvalidArgument("basis index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(num_qubits, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  if (num_qubits < 0) throw InvalidArgument("negative qubit count");
  require_ambient(num_qubits);
  const Eigen::Index d = dim_for(num_qubits);
  return DensityMatrix(num_qubits, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return matrix_.squaredNorm(); }

DensityMatrix apply_gate(const DensityMatrix& rho, const GateOp& op) {
  op.require_within(rho.num_qubits());
  const ComplexMatrix u = gate_matrix(op);
  ComplexMatrix a = rho.matrix();
  left_apply(a, u, op.targets, rho.num_qubits());
  right_apply_adjoint(a, u, op.targets, rho.num_qubits());
  make_hermitian(a);
  return DensityMatrix::assume_valid(std::move(a));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw InvalidArgument("apply_unitary: dimension mismatch");
  }
  return DensityMatrix::assume_valid(hermitian_part(u * rho.matrix() * u.adjoint()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep) {
  const int n = rho.num_qubits();
  keep.require_within(n);
  if (static_cast<int>(keep.size()) == n) return rho;

  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!keep.contains(q)) traced.push_back(q);
  }
  const auto keep_off = local_offsets(keep.indices(), n);
  const auto trace_off = local_offsets(traced, n);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const ComplexMatrix& m = rho.matrix();
  for (Eigen::Index j = 0; j < dk; ++j) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      Complex acc{0.0, 0.0};
      const Eigen::Index ri = keep_off[static_cast<std::size_t>(i)];
      const Eigen::Index cj = keep_off[static_cast<std::size_t>(j)];
      for (Eigen::Index t : trace_off) acc += m(ri + t, cj + t);
      out(i, j) = acc;
    }
  }
  return DensityMatrix::assume_valid(hermitian_part(out));
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("trace_distance: dimension mismatch");
  }
  const ComplexMatrix diff = a - b;
  if (hermiticity_defect(diff) <= 1e-12) {
    return 0.5 * hermitian_eigenvalues(diff).cwiseAbs().sum();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(diff);
  return 0.5 * svd.singularValues().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("trace_distance: dimension mismatch");
  return trace_distance(a.matrix(), b.matrix());
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("depolarize: p must lie in [0, 1]");
  const Eigen::Index d = rho.dim();
  ComplexMatrix m = (1.0 - p) * rho.matrix();
  m.diagonal().array() += p / static_cast<double>(d);
  return DensityMatrix::assume_valid(std::move(m));
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("mix: weight must lie in [0, 1]");
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("mix: dimension mismatch");
  return DensityMatrix::assume_valid((1.0 - w) * a.matrix() + w * b.matrix());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::assume_valid(kron(a.matrix(), b.matrix()));
}

std::vector<double> project_to_simplex(std::span<const double> values) {
  if (values.empty()) return {};
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) theta = t;
  }
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [theta](double v) { return std::max(v - theta, 0.0); });
  return out;
}

DensityMatrix project_to_density(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || qubits_for_dim(m.rows()) < 0) {
    throw InvalidArgument("project_to_density: matrix must be 2^n x 2^n");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  const RealVector& w = solver.eigenvalues();
  const auto projected = project_to_simplex(std::span<const double>(w.data(), static_cast<std::size_t>(w.size())));
  RealVector p = Eigen::Map<const RealVector>(projected.data(), w.size());
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexMatrix out = v * p.cast<Complex>().asDiagonal() * v.adjoint();
  return DensityMatrix::assume_valid(hermitian_part(out));
}

}  // namespace qmpsig

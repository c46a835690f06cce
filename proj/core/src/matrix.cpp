#include "qmpsig/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "qmpsig/error.hpp"

namespace qmpsig {

int max_qubits() {
  static const int cap = [] {
    const char* env = std::getenv("QMPSIG_MAX_QUBITS");
    if (env == nullptr || *env == '\0') return kHardQubitCap;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') return kHardQubitCap;
    return static_cast<int>(std::clamp<long>(v, 1, kHardQubitCap));
  }();
  return cap;
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0) return -1;
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index limit = dim_for(max_qubits());
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > limit || cols > limit) {
    throw InvalidArgument("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " exceeds ambient cap of " + std::to_string(max_qubits()) + " qubits");
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const Complex z = m(r, c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qmpsig

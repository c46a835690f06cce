#include "qmpsig/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <deque>
#include <map>

#include "qmpsig/error.hpp"
#include "qmpsig/pauli.hpp"

namespace qmpsig {
namespace {

struct Constraint {
  PauliString pauli;
  double target;
};

PauliString embed(const PauliString& local, const QubitSubset& subset, int n) {
  std::vector<Pauli> ops(static_cast<std::size_t>(n), Pauli::I);
  for (std::size_t i = 0; i < subset.size(); ++i) ops[static_cast<std::size_t>(subset[i])] = local[i];
  return PauliString(std::move(ops));
}

// Least-squares targets: entries that share a Pauli coefficient are averaged.
std::vector<Constraint> build_constraints(const CldmInstance& inst) {
  std::map<std::string, std::pair<double, int>> sums;
  std::map<std::string, PauliString> strings;
  for (const auto& e : inst.entries) {
    const int k = static_cast<int>(e.subset.size());
    for (const auto& p : all_pauli_strings(k)) {
      if (p.weight() == 0) continue;
      auto global = embed(p, e.subset, inst.num_qubits);
      auto key = global.to_string();
      auto& [sum, count] = sums[key];
      sum += p.expectation(e.marginal.matrix()).real();
      ++count;
      strings.emplace(key, std::move(global));
    }
  }
  std::vector<Constraint> out;
  out.reserve(sums.size());
  for (const auto& [key, acc] : sums) out.push_back({strings.at(key), acc.first / acc.second});
  return out;
}

double residual(const DensityMatrix& sigma, const CldmInstance& inst) {
  double r = 0.0;
  for (const auto& e : inst.entries) r = std::max(r, trace_distance(partial_trace(sigma, e.subset), e.marginal));
  return r;
}

}  // namespace

std::string_view to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "Feasible";
    case FeasibilityStatus::Infeasible: return "Infeasible";
    case FeasibilityStatus::Undecided: return "Undecided";
  }
  return "?";
}

void CldmInstance::validate() const {
  if (num_qubits < 1 || num_qubits > kOracleQubitCap) {
    throw InvalidArgument("CLDM instance needs 1 <= N <= " + std::to_string(kOracleQubitCap));
  }
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta must be in (0, 1]");
  for (const auto& e : entries) {
    e.subset.require_within(num_qubits);
    if (e.subset.empty()) throw InvalidArgument("CLDM entry on an empty subset");
    if (e.marginal.num_qubits() != static_cast<int>(e.subset.size())) {
      throw InvalidArgument("CLDM entry " + e.subset.to_string() + " has a " +
                            std::to_string(e.marginal.num_qubits()) + "-qubit marginal");
    }
  }
}

CldmInstance CldmInstance::from_public_key(const PublicKey& pk, double beta) {
  return CldmInstance{.num_qubits = pk.num_qubits, .entries = pk.entries, .beta = beta};
}

namespace {

Eigen::VectorXd flatten(const ComplexMatrix& m) {
  Eigen::VectorXd v(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    v(2 * i) = m.data()[i].real();
    v(2 * i + 1) = m.data()[i].imag();
  }
  return v;
}

ComplexMatrix unflatten(const Eigen::VectorXd& v, Eigen::Index dim) {
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(v(2 * i), v(2 * i + 1));
  return m;
}

}  // namespace

FeasibilityResult cldm_feasibility(const CldmInstance& inst, int max_iter, double tol_feas) {
  inst.validate();
  if (max_iter < 1) throw InvalidArgument("max_iter must be positive");
  if (!(tol_feas > 0.0)) throw InvalidArgument("tol_feas must be positive");

  const auto constraints = build_constraints(inst);
  const double dim = std::ldexp(1.0, inst.num_qubits);

  // One round of alternating projections: affine set, then density matrices.
  auto project = [&](const ComplexMatrix& x) {
    ComplexMatrix a = x;
    for (const auto& c : constraints) {
      c.pauli.add_to(a, Complex((c.target - c.pauli.expectation(x).real()) / dim, 0.0));
    }
    return project_to_density(a);
  };

  auto sigma = DensityMatrix::maximally_mixed(inst.num_qubits);
  FeasibilityResult result{.witness = sigma, .residual = residual(sigma, inst)};
  std::vector<double> best;
  best.reserve(static_cast<std::size_t>(max_iter));

  // Anderson acceleration of the fixed-point map x -> project(x). A stalled
  // accelerated window drops the history and is retried with plain steps;
  // only a stall of plain steps counts toward the verdict.
  Eigen::VectorXd x = flatten(sigma.matrix()), x_prev, f_prev;
  std::deque<Eigen::VectorXd> dx, df;
  bool plain = false;
  int anchor = 0;

  for (int it = 1; it <= max_iter; ++it) {
    sigma = project(unflatten(x, sigma.dim()));
    const double r = residual(sigma, inst);
    result.iterations = it;
    if (r < result.residual) {
      result.residual = r;
      result.witness = sigma;
    }
    if (result.residual <= tol_feas) {
      result.status = FeasibilityStatus::Feasible;
      return result;
    }
    best.push_back(result.residual);

    if (it - anchor > kStallWindow) {
      const double before = best[static_cast<std::size_t>(it - 1 - kStallWindow)];
      if (before - result.residual < kStallImprovement * before) {
        if (plain && result.residual > inst.beta / 2.0) {
          result.status = FeasibilityStatus::Infeasible;
          return result;
        }
        plain = !plain;
        anchor = it;
        dx.clear();
        df.clear();
        x_prev.resize(0);
      }
    }

    const Eigen::VectorXd tx = flatten(sigma.matrix());
    const Eigen::VectorXd f = tx - x;
    if (plain || r > 2.0 * result.residual) {
      dx.clear();
      df.clear();
      x_prev.resize(0);
      x = tx;
      continue;
    }
    if (x_prev.size() > 0) {
      dx.push_back(x - x_prev);
      df.push_back(f - f_prev);
      if (dx.size() > kAndersonMemory) {
        dx.pop_front();
        df.pop_front();
      }
    }
    x_prev = x;
    f_prev = f;
    if (dx.empty()) {
      x = tx;
      continue;
    }
    Eigen::MatrixXd dxm(f.size(), static_cast<Eigen::Index>(dx.size()));
    Eigen::MatrixXd dfm(f.size(), static_cast<Eigen::Index>(df.size()));
    for (std::size_t i = 0; i < dx.size(); ++i) {
      dxm.col(static_cast<Eigen::Index>(i)) = dx[i];
      dfm.col(static_cast<Eigen::Index>(i)) = df[i];
    }
    const Eigen::VectorXd gamma = dfm.colPivHouseholderQr().solve(f);
    x += f - (dxm + dfm) * gamma;
  }
  result.status = FeasibilityStatus::Undecided;
  return result;
}

CldmInstance bell_contradiction_instance(int num_qubits, double beta) {
  if (num_qubits < 2) throw InvalidArgument("Bell contradiction needs N >= 2");
  CldmInstance inst{.num_qubits = num_qubits, .entries = {}, .beta = beta};
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = Complex(1.0 / std::sqrt(2.0), 0.0);
  inst.entries.push_back({QubitSubset({0, 1}), DensityMatrix::from_pure(phi)});
  for (int q = 0; q < num_qubits; ++q) inst.entries.push_back({QubitSubset({q}), DensityMatrix::basis_state(1, 0)});
  std::sort(inst.entries.begin(), inst.entries.end(),
            [](const PublicKeyEntry& a, const PublicKeyEntry& b) { return a.subset < b.subset; });
  inst.validate();
  return inst;
}

}  // namespace qmpsig

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qmpsig/density.hpp"
#include "qmpsig/keygen.hpp"

namespace qmpsig {

/// Largest register the brute-force oracle accepts.
inline constexpr int kOracleQubitCap = 8;

/// Local density matrices on subsets of an N-qubit register, with promise gap beta.
struct CldmInstance {
  int num_qubits = 0;
  std::vector<PublicKeyEntry> entries;
  double beta = 0.1;

  /// Throws InvalidArgument on subsets outside [0, N), marginal size
  /// mismatches, N above the oracle cap or beta outside (0, 1].
  void validate() const;

  static CldmInstance from_public_key(const PublicKey& pk, double beta);
};

enum class FeasibilityStatus { Feasible, Infeasible, Undecided };
std::string_view to_string(FeasibilityStatus s);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Undecided;
  /// Best iterate found.
  std::optional<DensityMatrix> witness;
  /// Max trace distance between the witness marginals and the entries.
  double residual = 0.0;
  int iterations = 0;
};

inline constexpr double kDefaultFeasibilityTolerance = 1e-6;
inline constexpr int kDefaultFeasibilityIterations = 20000;
/// Stall rule: relative improvement of the best residual below
/// kStallImprovement over kStallWindow iterations.
inline constexpr int kStallWindow = 50;
inline constexpr double kStallImprovement = 1e-6;
/// History length of the Anderson-accelerated iteration.
inline constexpr std::size_t kAndersonMemory = 5;

/// Alternating projections from I / 2^N between the affine set of states
/// with the prescribed Pauli coefficients and the density-matrix set,
/// Anderson-accelerated. Feasible once the residual reaches tol_feas;
/// Infeasible when plain projection steps stall above beta / 2; Undecided
/// when max_iter runs out.
FeasibilityResult cldm_feasibility(const CldmInstance& inst,
                                   int max_iter = kDefaultFeasibilityIterations,
                                   double tol_feas = kDefaultFeasibilityTolerance);

/// Phi+ on {0, 1} together with |0><0| on every single qubit of an N-qubit register.
CldmInstance bell_contradiction_instance(int num_qubits, double beta);

}  // namespace qmpsig

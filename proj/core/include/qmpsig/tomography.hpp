#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmpsig/density.hpp"
#include "qmpsig/subset.hpp"

namespace qmpsig {

/// Outcome counts for one product-Pauli measurement setting on a k-qubit
/// subsystem. counts[o] is indexed by the outcome bits, position 0 most
/// significant, bit value 1 meaning eigenvalue -1.
struct MeasurementRecord {
  std::string basis;  // length k over {X, Y, Z}
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;

  /// Throws InvalidArgument on a malformed basis or counts that do not sum to shots.
  void validate() const;
};

struct TomographyEstimate {
  QubitSubset subset;
  /// Linear-inversion output; Hermitian with unit trace but possibly not PSD.
  ComplexMatrix raw;
  /// Frobenius-nearest density matrix to raw.
  DensityMatrix projected = DensityMatrix::maximally_mixed(0);
  std::uint64_t shots_used = 0;
};

/// ceil(kShotConstant * 4^k * ln(2/delta) / epsilon^2): copies per k-qubit
/// subsystem for trace-distance error <= epsilon with probability >= 1 - delta.
std::uint64_t required_shots(int k, double epsilon, double delta);
std::uint64_t required_shots(int k, double epsilon, double delta, double shot_constant);

/// All 3^k measurement settings, lexicographic over X < Y < Z.
std::vector<std::string> measurement_bases(int k);

/// "+-" style label for outcome index o on k qubits.
std::string outcome_label(std::size_t outcome, int k);
/// Inverse of outcome_label; throws FormatError.
std::size_t parse_outcome_label(std::string_view label);

/// Exact Born probabilities of measuring every qubit of `marginal` in `basis`.
std::vector<double> basis_probabilities(const DensityMatrix& marginal, std::string_view basis);

/// Samples `shots` outcomes from the Born distribution of the subset
/// marginal of rho. The random stream is derived from (seed, subset, basis).
MeasurementRecord sample_measurements(const DensityMatrix& rho, const QubitSubset& subset,
                                      std::string_view basis, std::uint64_t shots, std::uint64_t seed);

/// Same, for an already-reduced marginal; `subset` only labels the stream.
MeasurementRecord sample_marginal(const DensityMatrix& marginal, const QubitSubset& subset,
                                  std::string_view basis, std::uint64_t shots, std::uint64_t seed);

/// Splits total_shots over all 3^k settings (remainder to the first
/// settings) and samples each. Requires total_shots >= 3^k.
std::vector<MeasurementRecord> measure_all_bases(const DensityMatrix& marginal, const QubitSubset& subset,
                                                 std::uint64_t total_shots, std::uint64_t seed);

/// Linear inversion from all 3^k settings followed by PSD projection.
/// Pauli strings containing identities are estimated by marginalizing
/// every compatible setting. Throws InvalidArgument on missing settings.
TomographyEstimate reconstruct(std::span<const MeasurementRecord> records, const QubitSubset& subset);

/// Infinite-shot limit: reconstruct from exact Born probabilities.
TomographyEstimate reconstruct_exact(const DensityMatrix& marginal, const QubitSubset& subset);

}  // namespace qmpsig

#include "qmpsig/tomography.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qmpsig/config.hpp"
#include "qmpsig/error.hpp"
#include "qmpsig/gates.hpp"
#include "qmpsig/pauli.hpp"
#include "qmpsig/rng.hpp"

namespace qmpsig {
namespace {

struct BasisFrequencies {
  std::string_view basis;
  const double* probabilities;
  double weight;
};

void check_basis(std::string_view basis, int k) {
  if (static_cast<int>(basis.size()) != k) {
    throw InvalidArgument("basis '" + std::string(basis) + "' has wrong length for " + std::to_string(k) + " qubits");
  }
  for (char c : basis) {
    if (c != 'X' && c != 'Y' && c != 'Z') throw InvalidArgument("malformed basis '" + std::string(basis) + "'");
  }
}

std::uint64_t stream_tag(const QubitSubset& subset, std::string_view basis) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) { h = (h ^ v) * 0x100000001b3ULL; };
  for (int q : subset.indices()) feed(static_cast<std::uint64_t>(q) + 1);
  feed(0xff);
  for (char c : basis) feed(static_cast<unsigned char>(c));
  return h;
}

ComplexMatrix basis_change(std::string_view basis) {
  const double r = std::numbers::sqrt2 / 2.0;
  ComplexMatrix h(2, 2);
  h << r, r, r, -r;
  ComplexMatrix sdg = ComplexMatrix::Zero(2, 2);
  sdg(0, 0) = 1.0;
  sdg(1, 1) = Complex{0.0, -1.0};
  ComplexMatrix v = ComplexMatrix::Identity(1, 1);
  for (char c : basis) {
    ComplexMatrix local = ComplexMatrix::Identity(2, 2);
    if (c == 'X') local = h;
    if (c == 'Y') local = h * sdg;
    v = kron(v, local);
  }
  return v;
}

// raw = 2^-k sum_P <P> P, with <P> pooled over every compatible setting.
ComplexMatrix linear_inversion(std::span<const BasisFrequencies> data, int k) {
  const Eigen::Index d = dim_for(k);
  ComplexMatrix raw = ComplexMatrix::Zero(d, d);
  for (const auto& pauli : all_pauli_strings(k)) {
    std::size_t support_mask = 0;
    for (int q = 0; q < k; ++q) {
      if (pauli[static_cast<std::size_t>(q)] != Pauli::I) support_mask |= std::size_t{1} << (k - 1 - q);
    }
    double weight = 0.0, sum = 0.0;
    for (const auto& bf : data) {
      bool compatible = true;
      for (int q = 0; q < k && compatible; ++q) {
        const Pauli p = pauli[static_cast<std::size_t>(q)];
        compatible = p == Pauli::I || pauli_char(p) == bf.basis[static_cast<std::size_t>(q)];
      }
      if (!compatible) continue;
      double e = 0.0;
      for (Eigen::Index o = 0; o < d; ++o) {
        const double sign = (std::popcount(static_cast<std::size_t>(o) & support_mask) & 1) ? -1.0 : 1.0;
        e += sign * bf.probabilities[o];
      }
      sum += bf.weight * e;
      weight += bf.weight;
    }
    if (weight <= 0.0) throw InvalidArgument("no measurement data for Pauli string " + pauli.to_string());
    pauli.add_to(raw, Complex{sum / weight / static_cast<double>(d), 0.0});
  }
  return raw;
}

void require_full_coverage(std::span<const std::string> present, int k) {
  for (const auto& b : measurement_bases(k)) {
    if (std::find(present.begin(), present.end(), b) == present.end()) {
      throw InvalidArgument("missing measurement setting " + b);
    }
  }
}

}  // namespace

void MeasurementRecord::validate() const {
  check_basis(basis, static_cast<int>(basis.size()));
  if (counts.size() != (std::size_t{1} << basis.size())) {
    throw InvalidArgument("measurement record for " + basis + " has " + std::to_string(counts.size()) + " outcomes");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total != shots) throw InvalidArgument("measurement counts do not sum to shots for basis " + basis);
}

std::uint64_t required_shots(int k, double epsilon, double delta) {
  return required_shots(k, epsilon, delta, config::kShotConstant);
}

std::uint64_t required_shots(int k, double epsilon, double delta, double shot_constant) {
  if (k < 1) throw InvalidArgument("required_shots: k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("required_shots: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("required_shots: delta must lie in (0, 1)");
  if (!(shot_constant > 0.0)) throw InvalidArgument("required_shots: shot constant must be positive");
  const double shots = shot_constant * std::pow(4.0, k) * std::log(2.0 / delta) / (epsilon * epsilon);
  return static_cast<std::uint64_t>(std::ceil(shots));
}

std::vector<std::string> measurement_bases(int k) {
  std::vector<std::string> out{""};
  for (int q = 0; q < k; ++q) {
    std::vector<std::string> next;
    next.reserve(out.size() * 3);
    for (const auto& prefix : out) {
      for (char c : {'X', 'Y', 'Z'}) next.push_back(prefix + c);
    }
    out = std::move(next);
  }
  return out;
}

std::string outcome_label(std::size_t outcome, int k) {
  std::string s(static_cast<std::size_t>(k), '+');
  for (int q = 0; q < k; ++q) {
    if ((outcome >> (k - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '-';
  }
  return s;
}

std::size_t parse_outcome_label(std::string_view label) {
  std::size_t o = 0;
  for (char c : label) {
    if (c != '+' && c != '-') throw FormatError("bad outcome label '" + std::string(label) + "'");
    o = (o << 1) | (c == '-' ? 1U : 0U);
  }
  return o;
}

std::vector<double> basis_probabilities(const DensityMatrix& marginal, std::string_view basis) {
  check_basis(basis, marginal.num_qubits());
  const ComplexMatrix v = basis_change(basis);
  const ComplexMatrix rotated = v * marginal.matrix() * v.adjoint();
  std::vector<double> p(static_cast<std::size_t>(rotated.rows()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < rotated.rows(); ++i) {
    p[static_cast<std::size_t>(i)] = std::max(rotated(i, i).real(), 0.0);
    total += p[static_cast<std::size_t>(i)];
  }
  for (auto& x : p) x /= total;
  return p;
}

MeasurementRecord sample_measurements(const DensityMatrix& rho, const QubitSubset& subset, std::string_view basis,
                                      std::uint64_t shots, std::uint64_t seed) {
  check_basis(basis, static_cast<int>(subset.size()));
  return sample_marginal(partial_trace(rho, subset), subset, basis, shots, seed);
}

MeasurementRecord sample_marginal(const DensityMatrix& marginal, const QubitSubset& subset, std::string_view basis,
                                  std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("sample_measurements: shots must be >= 1");
  const auto p = basis_probabilities(marginal, basis);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = (acc += p[i]);
  cdf.back() = 1.0;

  MeasurementRecord rec;
  rec.basis = std::string(basis);
  rec.counts.assign(p.size(), 0);
  rec.shots = shots;
  Rng rng(derive_seed(seed, {stream_tag(subset, basis)}));
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    ++rec.counts[std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), p.size() - 1)];
  }
  return rec;
}

std::vector<MeasurementRecord> measure_all_bases(const DensityMatrix& marginal, const QubitSubset& subset,
                                                 std::uint64_t total_shots, std::uint64_t seed) {
  const auto bases = measurement_bases(marginal.num_qubits());
  if (total_shots < bases.size()) {
    throw InvalidArgument("need at least " + std::to_string(bases.size()) + " shots to cover every setting");
  }
  const std::uint64_t per = total_shots / bases.size();
  const std::uint64_t extra = total_shots % bases.size();
  std::vector<MeasurementRecord> out;
  out.reserve(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    out.push_back(sample_marginal(marginal, subset, bases[i], per + (i < extra ? 1 : 0), seed));
  }
  return out;
}

TomographyEstimate reconstruct(std::span<const MeasurementRecord> records, const QubitSubset& subset) {
  const int k = static_cast<int>(subset.size());
  if (k < 1) throw InvalidArgument("reconstruct: empty subset");
  std::vector<std::string> present;
  std::vector<std::vector<double>> freqs;
  std::vector<double> weights;
  std::uint64_t shots = 0;
  for (const auto& r : records) {
    r.validate();
    check_basis(r.basis, k);
    if (r.shots == 0) continue;
    std::vector<double> f(r.counts.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<double>(r.counts[i]) / static_cast<double>(r.shots);
    freqs.push_back(std::move(f));
    present.push_back(r.basis);
    weights.push_back(static_cast<double>(r.shots));
    shots += r.shots;
  }
  require_full_coverage(present, k);
  std::vector<BasisFrequencies> data;
  for (std::size_t i = 0; i < freqs.size(); ++i) data.push_back({present[i], freqs[i].data(), weights[i]});
  TomographyEstimate est;
  est.subset = subset;
  est.raw = linear_inversion(data, k);
  est.projected = project_to_density(est.raw);
  est.shots_used = shots;
  return est;
}

TomographyEstimate reconstruct_exact(const DensityMatrix& marginal, const QubitSubset& subset) {
  const int k = marginal.num_qubits();
  if (static_cast<int>(subset.size()) != k) throw InvalidArgument("reconstruct_exact: subset size mismatch");
  const auto bases = measurement_bases(k);
  std::vector<std::vector<double>> probs;
  probs.reserve(bases.size());
  for (const auto& b : bases) probs.push_back(basis_probabilities(marginal, b));
  std::vector<BasisFrequencies> data;
  for (std::size_t i = 0; i < bases.size(); ++i) data.push_back({bases[i], probs[i].data(), 1.0});
  TomographyEstimate est;
  est.subset = subset;
  est.raw = linear_inversion(data, k);
  est.projected = project_to_density(est.raw);
  return est;
}

}  // namespace qmpsig

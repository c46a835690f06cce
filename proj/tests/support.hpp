#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qmpsig/density.hpp"

namespace qmpsig::test {

inline ComplexMatrix ket_matrix(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return v * v.adjoint();
}

inline DensityMatrix bell_phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_matrix(ket_matrix({s, 0, 0, s}));
}

inline DensityMatrix ghz(int n) {
  ComplexVector v = ComplexVector::Zero(dim_for(n));
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(v);
}

inline DensityMatrix w_state(int n) {
  ComplexVector v = ComplexVector::Zero(dim_for(n));
  for (int q = 0; q < n; ++q) v(Eigen::Index{1} << (n - 1 - q)) = 1.0 / std::sqrt(static_cast<double>(n));
  return DensityMatrix::from_pure(v);
}

/// Ginibre-ensemble mixed state, or a Haar-random pure state when rank == 1.
inline DensityMatrix random_state(int n, std::mt19937_64& gen, Eigen::Index rank = 0) {
  std::normal_distribution<double> normal;
  const auto d = dim_for(n);
  if (rank <= 0) rank = d;
  ComplexMatrix g(d, rank);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < rank; ++c) g(r, c) = Complex(normal(gen), normal(gen));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(rho);
}

/// Reference partial trace by explicit index summation, independent of the library.
inline ComplexMatrix naive_partial_trace(const ComplexMatrix& rho, int n, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  auto index = [&](std::uint64_t kept_bits, std::uint64_t traced_bits) {
    std::uint64_t full = 0;
    for (int i = 0; i < k; ++i)
      if ((kept_bits >> (k - 1 - i)) & 1U) full |= std::uint64_t{1} << (n - 1 - keep[i]);
    const int t = static_cast<int>(traced.size());
    for (int i = 0; i < t; ++i)
      if ((traced_bits >> (t - 1 - i)) & 1U) full |= std::uint64_t{1} << (n - 1 - traced[i]);
    return static_cast<Eigen::Index>(full);
  };
  const std::uint64_t dk = std::uint64_t{1} << k, dt = std::uint64_t{1} << traced.size();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::uint64_t i = 0; i < dk; ++i)
    for (std::uint64_t j = 0; j < dk; ++j)
      for (std::uint64_t t = 0; t < dt; ++t) out(i, j) += rho(index(i, t), index(j, t));
  return out;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qmpsig::test

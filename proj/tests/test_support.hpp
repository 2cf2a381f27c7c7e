#pragma once

#include <random>

#include "tomolab/operator_algebra.hpp"

namespace tomolab::testing {

inline CMatrix random_ginibre(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  return g;
}

inline HermitianOperator random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = random_ginibre(n, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

inline DensityOperator random_density(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = random_ginibre(n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(HermitianOperator(rho));
}

inline Ket random_ket(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = Complex(normal(rng), normal(rng));
  }
  return Ket::normalized(std::move(v));
}

inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = random_ginibre(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    q.col(i) *= r(i, i) / std::abs(r(i, i));
  }
  return q;
}

/// Convex mixture of random product pure states on the 3x3 system.
inline DensityOperator random_separable(std::mt19937_64& rng, int terms = 5) {
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  CMatrix rho = CMatrix::Zero(9, 9);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const Ket a = random_ket(3, rng);
    const Ket b = random_ket(3, rng);
    CVector prod(9);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        prod(3 * j + k) = a.amplitude(j) * b.amplitude(k);
      }
    }
    const double weight = uniform(rng);
    rho += weight * (prod * prod.adjoint());
    total += weight;
  }
  rho /= total;
  return DensityOperator(HermitianOperator(rho));
}

}  // namespace tomolab::testing

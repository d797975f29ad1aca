#pragma once

// Seeded samplers. Every function draws only from the engine it is given.

#include <cstdint>
#include <random>

#include "conc/qstate.hpp"

namespace conc {

using Rng = std::mt19937_64;

// Independent stream for (seed, index).
inline Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

template <typename Real = double>
CMatrix<Real> gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<Real> n(Real(0), Real(1));
  CMatrix<Real> m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = std::complex<Real>(n(rng), n(rng));
  return m;
}

// rows × cols (rows >= cols) with orthonormal columns, Haar distributed.
template <typename Real = double>
CMatrix<Real> haar_isometry(Rng& rng, int rows, int cols) {
  const CMatrix<Real> g = gaussian_matrix<Real>(rng, rows, cols);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(rows, cols);
  const CMatrix<Real> r = qr.matrixQR();
  for (int j = 0; j < cols; ++j) {
    const std::complex<Real> d = r(j, j);
    const Real a = std::abs(d);
    if (a > Real(0)) q.col(j) *= d / a;
  }
  return q;
}

template <typename Real = double>
CMatrix<Real> haar_unitary(Rng& rng, int d) {
  return haar_isometry<Real>(rng, d, d);
}

inline Vector random_unit_vector(Rng& rng, int d) {
  Vector v = gaussian_matrix(rng, d, 1).col(0);
  return v / v.norm();
}

inline PureState random_pure_state(Rng& rng, const HilbertSpace& space) {
  return PureState(space, random_unit_vector(rng, space.total_dim()));
}

// Random density operator of the given rank (Ginibre-style GG†/tr).
inline DensityOperator random_density(Rng& rng, const HilbertSpace& space, int rank) {
  const Matrix g = gaussian_matrix(rng, space.total_dim(), rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityOperator(space, std::move(rho));
}

inline DensityOperator random_density(Rng& rng, const HilbertSpace& space) {
  return random_density(rng, space, space.total_dim());
}

}  // namespace conc

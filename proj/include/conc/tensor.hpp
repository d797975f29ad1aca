#pragma once

// Dense tensor-product helpers shared by every other module. All routines use the
// row-major factor convention of HilbertSpace.

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "conc/types.hpp"

namespace conc {

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Index map for reordering factors: output factor k is input factor perm[k].
// Returns map with map[out_index] = in_index.
std::vector<int> factor_permutation_map(std::span<const int> dims, std::span<const int> perm);

// Reorders the tensor factors of a square operator. `dims` are the input factor
// dimensions; output factor k is input factor perm[k].
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> permute_factors(
    const Eigen::MatrixBase<Derived>& op, std::span<const int> dims, std::span<const int> perm) {
  const auto map = factor_permutation_map(dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  if (op.rows() != n || op.cols() != n) {
    throw ArgumentError("permute_factors: operator shape does not match factor dims");
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = op(map[i], map[j]);
  }
  return out;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> permute_factors_vector(
    const Eigen::MatrixBase<Derived>& v, std::span<const int> dims, std::span<const int> perm) {
  const auto map = factor_permutation_map(dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  if (v.size() != n) throw ArgumentError("permute_factors_vector: size mismatch");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = v(map[i]);
  return out;
}

// Partial trace keeping the factors in `keep` (any order of indices; the kept factors
// stay in ascending order).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& op, std::span<const int> dims, std::span<const int> keep) {
  const int nf = static_cast<int>(dims.size());
  if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");
  std::vector<char> kept(nf, 0);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw ArgumentError("partial_trace: invalid factor index");
    if (kept[k]) throw ArgumentError("partial_trace: duplicate factor index");
    kept[k] = 1;
  }
  std::vector<int> perm;
  int dk = 1;
  int dt = 1;
  for (int k = 0; k < nf; ++k) {
    if (kept[k]) {
      perm.push_back(k);
      dk *= dims[k];
    }
  }
  for (int k = 0; k < nf; ++k) {
    if (!kept[k]) {
      perm.push_back(k);
      dt *= dims[k];
    }
  }
  const auto p = permute_factors(op, dims, perm);
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dk, dk);
  for (int i = 0; i < dk; ++i) {
    for (int j = 0; j < dk; ++j) {
      typename Derived::Scalar s(0);
      for (int c = 0; c < dt; ++c) s += p(i * dt + c, j * dt + c);
      out(i, j) = s;
    }
  }
  return out;
}

// Swap operator on C^d ⊗ C^d.
template <typename Real = double>
CMatrix<Real> swap_operator(int d) {
  CMatrix<Real> s = CMatrix<Real>::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = Real(1);
  }
  return s;
}

// Projector onto the symmetric (sign > 0) or antisymmetric (sign < 0) subspace of
// C^d ⊗ C^d.
template <typename Real = double>
CMatrix<Real> projector_sym_antisym(int d, int sign) {
  if (d < 2) throw ArgumentError("projector_sym_antisym: d must be >= 2");
  if (sign == 0) throw ArgumentError("projector_sym_antisym: sign must be +1 or -1");
  const Real s = sign > 0 ? Real(1) : Real(-1);
  CMatrix<Real> p = CMatrix<Real>::Identity(d * d, d * d);
  p += s * swap_operator<Real>(d);
  return p / Real(2);
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = tol::hermitian) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

}  // namespace conc

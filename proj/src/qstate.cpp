#include "conc/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conc {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

}  // namespace

PureState::PureState(HilbertSpace space, Vector amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (amps_.size() != space_.total_dim()) {
    throw ArgumentError("PureState: amplitude count " + std::to_string(amps_.size()) +
                        " does not match space " + space_.to_string());
  }
  if (!all_finite(amps_)) throw ValidationError("PureState: non-finite amplitude");
  const double n = amps_.squaredNorm();
  if (!(n > 0.0)) throw ValidationError("PureState: zero vector");
  if (n > 1.0 + tol::norm_excess) {
    throw ValidationError("PureState: squared norm " + std::to_string(n) + " exceeds 1");
  }
}

DensityOperator::DensityOperator(HilbertSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const int n = space_.total_dim();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ArgumentError("DensityOperator: matrix shape does not match space " +
                        space_.to_string());
  }
  if (!all_finite(matrix_)) throw ValidationError("DensityOperator: non-finite entry");
  if (!is_hermitian(matrix_)) throw ValidationError("DensityOperator: matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr.imag()) >= tol::trace_imag) {
    throw ValidationError("DensityOperator: trace has an imaginary part");
  }
  if (tr.real() > 1.0 + tol::trace_excess) {
    throw ValidationError("DensityOperator: trace " + std::to_string(tr.real()) + " exceeds 1");
  }
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_);
  RealVector ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  if (lo < -tol::eigen_clamp) {
    throw ValidationError("DensityOperator: negative eigenvalue " + std::to_string(lo));
  }
  if (lo < 0.0) {
    ev = ev.cwiseMax(0.0);
    matrix_ = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  }
}

DensityOperator::DensityOperator(const PureState& psi)
    : DensityOperator(psi.space(), psi.projector()) {}

double DensityOperator::purity() const {
  return (matrix_ * matrix_).trace().real();
}

Decomposition::Decomposition(HilbertSpace parent_space, Matrix members)
    : space_(std::move(parent_space)), members_(std::move(members)) {
  if (members_.rows() != space_.total_dim()) {
    throw ArgumentError("Decomposition: member length does not match space");
  }
}

std::vector<PureState> Decomposition::states() const {
  std::vector<PureState> out;
  out.reserve(members_.cols());
  for (int i = 0; i < size(); ++i) out.push_back(state(i));
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(a.space().concat(b.space()), kron(a.amplitudes(), b.amplitudes()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(a.space().concat(b.space()), kron(a.matrix(), b.matrix()));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  Matrix reduced = partial_trace(rho.matrix(), rho.space().factor_dims(), keep);
  return DensityOperator(rho.space().select(sorted), std::move(reduced));
}

Decomposition eigen_decomposition(const DensityOperator& rho, double cutoff) {
  if (cutoff < 0.0) throw ArgumentError("eigen_decomposition: cutoff must be >= 0");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const RealVector& ev = es.eigenvalues();
  std::vector<int> order;
  for (int j = 0; j < ev.size(); ++j) {
    if (ev(j) > cutoff) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ev(a) > ev(b); });
  Matrix members(rho.dim(), static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    members.col(static_cast<Eigen::Index>(k)) = std::sqrt(ev(order[k])) * es.eigenvectors().col(order[k]);
  }
  return Decomposition(rho.space(), std::move(members));
}

Decomposition rotate_decomposition(const Decomposition& dec, const Matrix& u) {
  if (u.cols() != dec.size()) {
    throw ArgumentError("rotate_decomposition: isometry has " + std::to_string(u.cols()) +
                        " columns, decomposition has " + std::to_string(dec.size()) + " members");
  }
  if (u.rows() < u.cols()) throw ArgumentError("rotate_decomposition: need m >= r");
  const Matrix gram = u.adjoint() * u;
  if (max_abs(gram - Matrix::Identity(u.cols(), u.cols())) > tol::isometry) {
    throw ArgumentError("rotate_decomposition: matrix does not have orthonormal columns");
  }
  return Decomposition(dec.parent_space(), dec.members() * u.transpose());
}

Matrix coefficient_matrix(const Vector& amplitudes, int d_a, int d_b) {
  Matrix c(d_a, d_b);
  for (int a = 0; a < d_a; ++a) {
    for (int b = 0; b < d_b; ++b) c(a, b) = amplitudes(a * d_b + b);
  }
  return c;
}

}  // namespace conc

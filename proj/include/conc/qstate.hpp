#pragma once

#include <span>
#include <vector>

#include "conc/hilbert_space.hpp"
#include "conc/tensor.hpp"
#include "conc/types.hpp"

namespace conc {

// Possibly subnormalized pure state, 0 < <ψ|ψ> <= 1.
class PureState {
 public:
  PureState(HilbertSpace space, Vector amplitudes);

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amps_; }
  double norm_sq() const { return amps_.squaredNorm(); }
  Matrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  HilbertSpace space_;
  Vector amps_;
};

// Positive semidefinite operator with trace <= 1. Eigenvalues in [-1e-10, 0) are
// clamped to zero on construction; anything more negative is rejected.
class DensityOperator {
 public:
  DensityOperator(HilbertSpace space, Matrix matrix);
  explicit DensityOperator(const PureState& psi);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return space_.total_dim(); }
  double trace() const { return matrix_.trace().real(); }
  double purity() const;

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

// ρ = Σ_i |ψ_i><ψ_i| stored as the columns of a total_dim × m matrix. Members may be
// zero vectors after a rotation by an isometry with zero rows.
class Decomposition {
 public:
  Decomposition(HilbertSpace parent_space, Matrix members);

  const HilbertSpace& parent_space() const { return space_; }
  const Matrix& members() const { return members_; }
  int size() const { return static_cast<int>(members_.cols()); }
  PureState state(int i) const { return PureState(space_, members_.col(i)); }
  std::vector<PureState> states() const;
  Matrix reconstruct() const { return members_ * members_.adjoint(); }

 private:
  HilbertSpace space_;
  Matrix members_;
};

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);

// √λ_j |Φ_j> for every eigenvalue above `cutoff`, sorted by decreasing λ.
Decomposition eigen_decomposition(const DensityOperator& rho, double cutoff = tol::eigen_cutoff);

// |ψ_i> = Σ_j U_ij |φ_j>; `u` is m × r with orthonormal columns.
Decomposition rotate_decomposition(const Decomposition& dec, const Matrix& u);

// Row-major reshape of a bipartite amplitude vector into a d_A × d_B coefficient matrix.
Matrix coefficient_matrix(const Vector& amplitudes, int d_a, int d_b);

}  // namespace conc

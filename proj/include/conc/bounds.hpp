#pragma once

#include <string>
#include <variant>
#include <vector>

#include "conc/qstate.hpp"
#include "conc/twocopy.hpp"

namespace conc {

// Unit-norm coefficients z_α over enumerate_chi_indices(space); |τ> = Σ z*_α |χ_α>.
class TauVector {
 public:
  TauVector(HilbertSpace space, Vector coefficients);
  // z concentrated on a single α.
  static TauVector single(const HilbertSpace& space, const ChiIndex& alpha);

  const HilbertSpace& space() const { return space_; }
  const Vector& coefficients() const { return z_; }

 private:
  HilbertSpace space_;
  Vector z_;
};

// Complex symmetric r × r matrix T_jk = <τ|φ_j>|φ_k>.
struct TMatrix {
  Matrix entries;
  std::variant<ChiIndex, TauVector> source;

  int rank() const { return static_cast<int>(entries.rows()); }
};

enum class BoundKind {
  alb,
  lb_tau,
  sum_sq_alb,
  two_copy_vi,
  two_copy_valpha_sum,
  witness,
  witness_sq_sum,
  multi_lb_tau,
  multi_sum_sq,
  multi_two_copy,
  multi_witness,
};

std::string to_string(BoundKind kind);

struct BoundTerm {
  ChiIndex index;
  double raw = 0.0;
  unsigned bipartition_mask = 1;  // left factor set as a bitmask; 1 for bipartite
};

// `value` is the clamped concurrence lower bound; `raw_value` is the pre-clamp
// aggregate for the kind:
//   alb, lb_tau             S₁ − Σ_{l>1} S_l                  value = max(0, raw)
//   two_copy_vi             tr(ρ⊗ρ V_(i))                     value = √max(0, raw)
//   sum_sq_alb              Σ_α ALB_α²                        value = √raw
//   two_copy_valpha_sum     Σ_{raw_α ≥ 0} tr(ρ⊗ρ V_α)         value = √raw
//   witness                 −tr(ρ W)                          value = max(0, raw)
//   witness_sq_sum          Σ_{t_α ≤ 0} t_α², t_α = tr(ρ W_α)  value = √raw
// Multipartite kinds fold the 2^{1−N/2} prefactor into value.
struct BoundReport {
  BoundKind kind = BoundKind::alb;
  double value = 0.0;
  double raw_value = 0.0;
  std::vector<BoundTerm> per_alpha;
};

double pure_concurrence(const PureState& psi);

TMatrix t_matrix(const Decomposition& dec, const ChiIndex& alpha);
TMatrix t_matrix(const Decomposition& dec, const TauVector& tau);

// Singular values in decreasing order.
RealVector singular_values(const Matrix& m);
// S₁ − Σ_{l>1} S_l, 0 for an empty matrix.
double alb_raw(const Matrix& t);

BoundReport algebraic_lower_bound(const Decomposition& dec, const ChiIndex& alpha);
BoundReport algebraic_lower_bound(const DensityOperator& rho, const ChiIndex& alpha);
BoundReport algebraic_lower_bound(const DensityOperator& rho, const TauVector& tau);

// √(Σ_α ALB_α²) with every ALB_α in per_alpha.
BoundReport sum_sq_algebraic_bound(const DensityOperator& rho);

BoundReport two_copy_bound_Vi(const DensityOperator& rho, int which);
BoundReport two_copy_bound_Valpha_sum(const DensityOperator& rho, const VWeights& weights = {});

// tr(ρ ⊗ σ V_(i)), bounded above by C(ρ) C(σ).
double cross_expectation(const DensityOperator& rho, const DensityOperator& sigma, int which);

}  // namespace conc

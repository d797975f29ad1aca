#include "conc/bounds.hpp"

#include <cmath>

namespace conc {

namespace {

Matrix t_entries(const Decomposition& dec, const ChiIndex& a) {
  const auto& space = dec.parent_space();
  require_bipartite(space, "t_matrix");
  validate_chi(a, space.factor_dim(0), space.factor_dim(1));
  const int db = space.factor_dim(1);
  const Matrix& phi = dec.members();
  const int r = dec.size();
  Matrix t(r, r);
  for (int j = 0; j < r; ++j) {
    for (int k = j; k < r; ++k) {
      t(j, k) = chi_overlap(a, db, phi.col(j), phi.col(k));
      t(k, j) = t(j, k);
    }
  }
  return t;
}

}  // namespace

TauVector::TauVector(HilbertSpace space, Vector coefficients)
    : space_(std::move(space)), z_(std::move(coefficients)) {
  require_bipartite(space_, "TauVector");
  const auto n = enumerate_chi_indices(space_).size();
  if (static_cast<std::size_t>(z_.size()) != n) {
    throw ArgumentError("TauVector: expected " + std::to_string(n) + " coefficients");
  }
  if (std::abs(z_.squaredNorm() - 1.0) > 1e-12) {
    throw ArgumentError("TauVector: coefficients must have unit norm");
  }
}

TauVector TauVector::single(const HilbertSpace& space, const ChiIndex& alpha) {
  const auto idx = enumerate_chi_indices(space);
  Vector z = Vector::Zero(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] == alpha) z(static_cast<Eigen::Index>(k)) = 1.0;
  }
  if (z.squaredNorm() == 0.0) throw ArgumentError("TauVector::single: " + alpha.label() + " not in space");
  return TauVector(space, std::move(z));
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::alb: return "alb";
    case BoundKind::lb_tau: return "lb_tau";
    case BoundKind::sum_sq_alb: return "sum_sq_alb";
    case BoundKind::two_copy_vi: return "two_copy_vi";
    case BoundKind::two_copy_valpha_sum: return "two_copy_valpha_sum";
    case BoundKind::witness: return "witness";
    case BoundKind::witness_sq_sum: return "witness_sq_sum";
    case BoundKind::multi_lb_tau: return "multi_lb_tau";
    case BoundKind::multi_sum_sq: return "multi_sum_sq";
    case BoundKind::multi_two_copy: return "multi_two_copy";
    case BoundKind::multi_witness: return "multi_witness";
  }
  return "unknown";
}

double pure_concurrence(const PureState& psi) {
  require_bipartite(psi.space(), "pure_concurrence");
  const Matrix c = coefficient_matrix(psi.amplitudes(), psi.space().factor_dim(0),
                                      psi.space().factor_dim(1));
  const Matrix reduced = c * c.adjoint();
  const double n = psi.norm_sq();
  const double purity = reduced.squaredNorm();
  return std::sqrt(std::max(0.0, 2.0 * (n * n - purity)));
}

TMatrix t_matrix(const Decomposition& dec, const ChiIndex& alpha) {
  return {t_entries(dec, alpha), alpha};
}

TMatrix t_matrix(const Decomposition& dec, const TauVector& tau) {
  if (!(tau.space() == dec.parent_space())) {
    throw ArgumentError("t_matrix: tau space does not match decomposition space");
  }
  const auto idx = enumerate_chi_indices(dec.parent_space());
  Matrix t = Matrix::Zero(dec.size(), dec.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Complex zk = tau.coefficients()(static_cast<Eigen::Index>(k));
    if (zk != Complex(0.0)) t += zk * t_entries(dec, idx[k]);
  }
  return {std::move(t), tau};
}

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();  // already sorted decreasing
}

double alb_raw(const Matrix& t) {
  const RealVector s = singular_values(t);
  if (s.size() == 0) return 0.0;
  return s(0) - (s.sum() - s(0));
}

BoundReport algebraic_lower_bound(const Decomposition& dec, const ChiIndex& alpha) {
  const double raw = alb_raw(t_entries(dec, alpha));
  BoundReport r;
  r.kind = BoundKind::alb;
  r.raw_value = raw;
  r.value = std::max(0.0, raw);
  r.per_alpha.push_back({alpha, raw});
  return r;
}

BoundReport algebraic_lower_bound(const DensityOperator& rho, const ChiIndex& alpha) {
  return algebraic_lower_bound(eigen_decomposition(rho), alpha);
}

BoundReport algebraic_lower_bound(const DensityOperator& rho, const TauVector& tau) {
  const TMatrix t = t_matrix(eigen_decomposition(rho), tau);
  BoundReport r;
  r.kind = BoundKind::lb_tau;
  r.raw_value = alb_raw(t.entries);
  r.value = std::max(0.0, r.raw_value);
  return r;
}

BoundReport sum_sq_algebraic_bound(const DensityOperator& rho) {
  require_bipartite(rho.space(), "sum_sq_algebraic_bound");
  const Decomposition dec = eigen_decomposition(rho);
  BoundReport r;
  r.kind = BoundKind::sum_sq_alb;
  for (const auto& a : enumerate_chi_indices(rho.space())) {
    const double alb = algebraic_lower_bound(dec, a).value;
    r.per_alpha.push_back({a, alb});
    r.raw_value += alb * alb;
  }
  r.value = std::sqrt(r.raw_value);
  return r;
}

BoundReport two_copy_bound_Vi(const DensityOperator& rho, int which) {
  require_bipartite(rho.space(), "two_copy_bound_Vi");
  const TwoCopyOperator v = build_V(rho.space(), which);
  BoundReport r;
  r.kind = BoundKind::two_copy_vi;
  r.raw_value = real_checked(expectation(v, rho.matrix(), rho.matrix()), "tr(rho x rho V)");
  r.value = std::sqrt(std::max(0.0, r.raw_value));
  return r;
}

BoundReport two_copy_bound_Valpha_sum(const DensityOperator& rho, const VWeights& weights) {
  require_bipartite(rho.space(), "two_copy_bound_Valpha_sum");
  weights.validate();
  BoundReport r;
  r.kind = BoundKind::two_copy_valpha_sum;
  for (const auto& a : enumerate_chi_indices(rho.space())) {
    const double t = v_alpha_expectation(rho.matrix(), rho.matrix(), rho.space(), a, weights);
    r.per_alpha.push_back({a, t});
    if (t >= 0.0) r.raw_value += t;
  }
  r.value = std::sqrt(r.raw_value);
  return r;
}

double cross_expectation(const DensityOperator& rho, const DensityOperator& sigma, int which) {
  if (!(rho.space() == sigma.space())) throw ArgumentError("cross_expectation: space mismatch");
  require_bipartite(rho.space(), "cross_expectation");
  const TwoCopyOperator v = build_V(rho.space(), which);
  return real_checked(expectation(v, rho.matrix(), sigma.matrix()), "tr(rho x sigma V)");
}

}  // namespace conc

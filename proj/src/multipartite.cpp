#include "conc/multipartite.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "conc/tensor.hpp"

namespace conc {

namespace {

std::vector<int> induced_order(const Bipartition& cut) {
  std::vector<int> perm = cut.left;
  perm.insert(perm.end(), cut.right.begin(), cut.right.end());
  return perm;
}

Decomposition induced_decomposition(const Decomposition& dec, const Bipartition& cut) {
  const HilbertSpace& space = dec.parent_space();
  const auto dims = space.factor_dims();
  const auto perm = induced_order(cut);
  Matrix members(dec.members().rows(), dec.members().cols());
  for (int j = 0; j < dec.size(); ++j) {
    members.col(j) = permute_factors_vector(dec.members().col(j), dims, perm);
  }
  return Decomposition(induced_space(space, cut), std::move(members));
}

void require_multipartite(const HilbertSpace& space, const char* what) {
  if (space.num_factors() < 2) {
    throw ArgumentError(std::string(what) + ": need at least two factors");
  }
  check_capacity(space);
}

}  // namespace

int Bipartition::left_dim(const HilbertSpace& space) const {
  int d = 1;
  for (int k : left) d *= space.factor_dim(k);
  return d;
}

int Bipartition::right_dim(const HilbertSpace& space) const {
  int d = 1;
  for (int k : right) d *= space.factor_dim(k);
  return d;
}

std::vector<Bipartition> enumerate_bipartitions(const HilbertSpace& space) {
  const int n = space.num_factors();
  if (n < 2) throw ArgumentError("enumerate_bipartitions: need at least two factors");
  if (n > 16) throw CapacityError("enumerate_bipartitions: too many factors");
  std::vector<Bipartition> out;
  const unsigned full = (1u << n) - 1u;
  for (unsigned mask = 1; mask < full; mask += 2) {
    Bipartition b;
    b.mask = mask;
    for (int k = 0; k < n; ++k) ((mask >> k) & 1u ? b.left : b.right).push_back(k);
    out.push_back(std::move(b));
  }
  return out;
}

HilbertSpace induced_space(const HilbertSpace& space, const Bipartition& cut) {
  return HilbertSpace{cut.left_dim(space), cut.right_dim(space)};
}

Matrix to_induced(const Matrix& op, const HilbertSpace& space, const Bipartition& cut) {
  const auto dims = space.factor_dims();
  return permute_factors(op, dims, induced_order(cut));
}

Vector to_induced(const Vector& amps, const HilbertSpace& space, const Bipartition& cut) {
  const auto dims = space.factor_dims();
  return permute_factors_vector(amps, dims, induced_order(cut));
}

Matrix from_induced(const Matrix& op, const HilbertSpace& space, const Bipartition& cut) {
  const auto perm = induced_order(cut);
  std::vector<int> dims(perm.size());
  std::vector<int> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    dims[k] = space.factor_dim(perm[k]);
    inv[static_cast<std::size_t>(perm[k])] = static_cast<int>(k);
  }
  return permute_factors(op, dims, inv);
}

std::vector<ChiGamma> enumerate_chi_gamma(const HilbertSpace& space) {
  std::vector<ChiGamma> out;
  for (const auto& cut : enumerate_bipartitions(space)) {
    for (const auto& a : enumerate_chi_indices(induced_space(space, cut))) {
      out.push_back({cut, a});
    }
  }
  return out;
}

double multipartite_prefactor(int n_factors) {
  return std::pow(2.0, 1.0 - 0.5 * n_factors);
}

void check_capacity(const HilbertSpace& space) {
  const long long d = space.total_dim();
  if (d * d > 4096) {
    throw CapacityError("two-copy dimension " + std::to_string(d * d) + " of " +
                        space.to_string() + " exceeds the 4096 cap");
  }
}

double multipartite_pure_concurrence(const PureState& psi) {
  const HilbertSpace& space = psi.space();
  require_multipartite(space, "multipartite_pure_concurrence");
  const double n = psi.norm_sq();
  double sum = 0.0;
  for (const auto& cut : enumerate_bipartitions(space)) {
    const Matrix c = coefficient_matrix(to_induced(psi.amplitudes(), space, cut),
                                        cut.left_dim(space), cut.right_dim(space));
    const double purity = (c * c.adjoint()).squaredNorm();
    sum += std::max(0.0, 2.0 * (n * n - purity));
  }
  return multipartite_prefactor(space.num_factors()) * std::sqrt(sum);
}

std::vector<Complex> chi_gamma_overlaps(const PureState& psi) {
  const HilbertSpace& space = psi.space();
  require_multipartite(space, "chi_gamma_overlaps");
  std::vector<Complex> out;
  for (const auto& cut : enumerate_bipartitions(space)) {
    const Vector v = to_induced(psi.amplitudes(), space, cut);
    const HilbertSpace ind = induced_space(space, cut);
    for (const auto& a : enumerate_chi_indices(ind)) {
      out.push_back(chi_overlap(a, ind.factor_dim(1), v, v));
    }
  }
  return out;
}

BoundReport multipartite_lb_tau(const DensityOperator& rho, const Vector& z) {
  const HilbertSpace& space = rho.space();
  require_multipartite(space, "multipartite_lb_tau");
  const auto gammas = enumerate_chi_gamma(space);
  if (static_cast<std::size_t>(z.size()) != gammas.size()) {
    throw ArgumentError("multipartite_lb_tau: expected " + std::to_string(gammas.size()) +
                        " coefficients");
  }
  if (std::abs(z.squaredNorm() - 1.0) > 1e-12) {
    throw ArgumentError("multipartite_lb_tau: coefficients must have unit norm");
  }
  const Decomposition dec = eigen_decomposition(rho);
  Matrix t = Matrix::Zero(dec.size(), dec.size());
  std::size_t k = 0;
  for (const auto& cut : enumerate_bipartitions(space)) {
    const Decomposition ind = induced_decomposition(dec, cut);
    for (const auto& a : enumerate_chi_indices(ind.parent_space())) {
      const Complex zk = z(static_cast<Eigen::Index>(k++));
      if (zk != Complex(0.0)) t += zk * t_matrix(ind, a).entries;
    }
  }
  BoundReport r;
  r.kind = BoundKind::multi_lb_tau;
  r.raw_value = alb_raw(t);
  r.value = multipartite_prefactor(space.num_factors()) * std::max(0.0, r.raw_value);
  return r;
}

BoundReport multipartite_sum_sq_bound(const DensityOperator& rho) {
  const HilbertSpace& space = rho.space();
  require_multipartite(space, "multipartite_sum_sq_bound");
  const Decomposition dec = eigen_decomposition(rho);
  BoundReport r;
  r.kind = BoundKind::multi_sum_sq;
  for (const auto& cut : enumerate_bipartitions(space)) {
    const Decomposition ind = induced_decomposition(dec, cut);
    for (const auto& a : enumerate_chi_indices(ind.parent_space())) {
      const double alb = algebraic_lower_bound(ind, a).value;
      r.per_alpha.push_back({a, alb, cut.mask});
      r.raw_value += alb * alb;
    }
  }
  r.value = multipartite_prefactor(space.num_factors()) * std::sqrt(r.raw_value);
  return r;
}

BoundReport multipartite_two_copy_bound(const DensityOperator& rho, const VWeights& weights) {
  const HilbertSpace& space = rho.space();
  require_multipartite(space, "multipartite_two_copy_bound");
  weights.validate();
  BoundReport r;
  r.kind = BoundKind::multi_two_copy;
  for (const auto& cut : enumerate_bipartitions(space)) {
    const HilbertSpace ind = induced_space(space, cut);
    const Matrix m = to_induced(rho.matrix(), space, cut);
    for (const auto& a : enumerate_chi_indices(ind)) {
      const double t = v_alpha_expectation(m, m, ind, a, weights);
      r.per_alpha.push_back({a, t, cut.mask});
      if (t >= 0.0) r.raw_value += t;
    }
  }
  const double p = multipartite_prefactor(space.num_factors());
  r.value = std::sqrt(p * p * r.raw_value);
  return r;
}

std::vector<WitnessOperator> multipartite_witnesses(const DensityOperator& sigma,
                                                    const VWeights& weights) {
  const HilbertSpace& space = sigma.space();
  require_multipartite(space, "multipartite_witnesses");
  weights.validate();
  const double p = multipartite_prefactor(space.num_factors());
  const Decomposition dec = eigen_decomposition(sigma);
  std::vector<WitnessOperator> out;
  for (const auto& cut : enumerate_bipartitions(space)) {
    const HilbertSpace ind = induced_space(space, cut);
    const Decomposition ind_dec = induced_decomposition(dec, cut);
    const Matrix s = to_induced(sigma.matrix(), space, cut);
    for (const auto& a : enumerate_chi_indices(ind)) {
      const double alb = algebraic_lower_bound(ind_dec, a).value;
      if (!(alb > tol::witness_normalizer)) continue;
      // LB_γ(σ) carries the prefactor, so 2^{2−N} / LB_γ(σ) = p / ALB_γ(σ).
      Matrix w = -p * v_alpha_partial_trace(s, ind, a, weights) / alb;
      w = from_induced(w, space, cut);
      w = (0.5 * (w + w.adjoint())).eval();
      WitnessOperator::Meta meta{"sigma", p * alb, a, weights, cut.mask};
      out.emplace_back(space, std::move(w), std::move(meta));
    }
  }
  if (out.empty()) throw UnusableWitnessError("no gamma with ALB(sigma) > 0");
  return out;
}

BoundReport multipartite_witness_bound(const DensityOperator& rho, const DensityOperator& sigma,
                                       const VWeights& weights) {
  if (!(rho.space() == sigma.space())) {
    throw ArgumentError("multipartite_witness_bound: space mismatch");
  }
  const auto ws = multipartite_witnesses(sigma, weights);
  BoundReport r = witness_sq_sum_bound(rho, ws);
  r.kind = BoundKind::multi_witness;
  return r;
}

void write_gamma_csv(std::ostream& os, const BoundReport& report) {
  os << "bipartition_mask,x,y,p,q,raw_value\n";
  char buf[64];
  for (const auto& t : report.per_alpha) {
    std::snprintf(buf, sizeof buf, "%.17g", t.raw);
    os << t.bipartition_mask << ',' << t.index.x << ',' << t.index.y << ',' << t.index.p << ','
       << t.index.q << ',' << buf << '\n';
  }
}

}  // namespace conc

#pragma once

#include <iosfwd>
#include <vector>

#include "conc/bounds.hpp"
#include "conc/witness.hpp"

namespace conc {

// Split of the factors into `left` (always containing factor 0) and `right`.
struct Bipartition {
  unsigned mask = 0;  // bit k set <=> factor k in left
  std::vector<int> left;
  std::vector<int> right;

  int left_dim(const HilbertSpace& space) const;
  int right_dim(const HilbertSpace& space) const;
};

// 2^{N-1} − 1 cuts ordered by mask.
std::vector<Bipartition> enumerate_bipartitions(const HilbertSpace& space);

// Bipartite space (∏ left dims, ∏ right dims); the right side is flattened row-major
// in ascending factor order.
HilbertSpace induced_space(const HilbertSpace& space, const Bipartition& cut);
Matrix to_induced(const Matrix& op, const HilbertSpace& space, const Bipartition& cut);
Vector to_induced(const Vector& amps, const HilbertSpace& space, const Bipartition& cut);
Matrix from_induced(const Matrix& op, const HilbertSpace& space, const Bipartition& cut);

struct ChiGamma {
  Bipartition bipartition;
  ChiIndex index;  // over the induced space
};

std::vector<ChiGamma> enumerate_chi_gamma(const HilbertSpace& space);

// 2^{1−N/2}.
double multipartite_prefactor(int n_factors);

// Throws CapacityError when (total dim)² exceeds 4096.
void check_capacity(const HilbertSpace& space);

// 2^{1−N/2} √(Σ_l C_l²) from reduced purities.
double multipartite_pure_concurrence(const PureState& psi);

// ⟨χ_γ|ψψ⟩ for every γ in enumerate_chi_gamma order.
std::vector<Complex> chi_gamma_overlaps(const PureState& psi);

// z over enumerate_chi_gamma(space), unit norm.
BoundReport multipartite_lb_tau(const DensityOperator& rho, const Vector& z);
BoundReport multipartite_sum_sq_bound(const DensityOperator& rho);
BoundReport multipartite_two_copy_bound(const DensityOperator& rho, const VWeights& weights = {});

// W_σγ for every γ with ALB_γ(σ) > 0, expressed in the original factor order.
std::vector<WitnessOperator> multipartite_witnesses(const DensityOperator& sigma,
                                                    const VWeights& weights = {});
BoundReport multipartite_witness_bound(const DensityOperator& rho, const DensityOperator& sigma,
                                       const VWeights& weights = {});

// Columns: bipartition_mask, x, y, p, q, raw_value.
void write_gamma_csv(std::ostream& os, const BoundReport& report);

}  // namespace conc

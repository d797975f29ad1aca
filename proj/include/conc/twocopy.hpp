#pragma once

// Operators on two copies of a bipartite space H_A ⊗ H_B. The canonical two-copy factor
// order is (A1, B1, A2, B2), so ρ ⊗ σ is simply kron(ρ, σ).

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "conc/hilbert_space.hpp"
#include "conc/types.hpp"

namespace conc {

// Antisymmetric pair (x < y) in A and (p < q) in B labelling
// |χ> = (|xy> − |yx>)_A (|pq> − |qp>)_B.
struct ChiIndex {
  int x = 0;
  int y = 1;
  int p = 0;
  int q = 1;

  std::string label() const;  // "x0y1p1q2"
  friend auto operator<=>(const ChiIndex&, const ChiIndex&) = default;
};

void validate_chi(const ChiIndex& alpha, int d_a, int d_b);

struct ChiVector {
  ChiIndex index;
  Vector vector;  // length (d_A d_B)^2, canonical order
};

class TwoCopyOperator {
 public:
  TwoCopyOperator(HilbertSpace joint_space, Matrix matrix);

  const HilbertSpace& joint_space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  // Factor list of the two-copy space, e.g. {dA, dB, dA, dB}.
  std::vector<int> two_copy_dims() const;

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

// Convex weights (c1, c2) of V_α = c1 V_(1)α + c2 V_(2)α.
struct VWeights {
  double c1 = 0.5;
  double c2 = 0.5;

  static VWeights only(int which);  // which ∈ {1, 2}
  void validate() const;
};

void require_bipartite(const HilbertSpace& space, const char* what);

// Reorders an operator given in (A1, A2, B1, B2) order into (A1, B1, A2, B2).
Matrix reorder_aabb_to_abab(const Matrix& op_aabb, int d_a, int d_b);

// 𝓐 = 4 P₋^A ⊗ P₋^B.
TwoCopyOperator build_A(const HilbertSpace& space);

// Lexicographic in (x, y, p, q).
std::vector<ChiIndex> enumerate_chi_indices(const HilbertSpace& space);
std::vector<ChiVector> enumerate_chi(const HilbertSpace& space);
ChiVector chi_vector(const HilbertSpace& space, const ChiIndex& alpha);

// V_(1) = 4 (P₋^A − P₊^A) ⊗ P₋^B,  V_(2) = 4 P₋^A ⊗ (P₋^B − P₊^B).
TwoCopyOperator build_V(const HilbertSpace& space, int which);

// (𝓜_A, 𝓜_B) = (|x><x| + |y><y|, |p><p| + |q><q|).
std::pair<Matrix, Matrix> mask_projector(const HilbertSpace& space, const ChiIndex& alpha);
// 𝓜 on the two-copy space in canonical order.
Matrix two_copy_mask(const HilbertSpace& space, const ChiIndex& alpha);

// c1 𝓜 V_(1) 𝓜 + c2 𝓜 V_(2) 𝓜, assembled on the full two-copy space.
TwoCopyOperator build_V_alpha(const HilbertSpace& space, const ChiIndex& alpha,
                              const VWeights& weights);

// tr((ρ ⊗ σ) V) and tr₂((I ⊗ σ) V).
Complex expectation(const TwoCopyOperator& v, const Matrix& rho, const Matrix& sigma);
Matrix partial_trace_second_copy(const TwoCopyOperator& v, const Matrix& sigma);

// ---------------------------------------------------------------------------------
// Compressed algebra. V_α is supported on span{x,y} ⊗ span{p,q} in each copy, where
// it coincides with the two-qubit V_(i). The functions below work on the 4 × 4
// submatrix in the basis (xp, xq, yp, yq) and never form the full operator.

Matrix compress(const Matrix& op, const HilbertSpace& space, const ChiIndex& alpha);
Matrix embed(const Matrix& block, const HilbertSpace& space, const ChiIndex& alpha);

// 16 × 16 two-qubit c1 V_(1) + c2 V_(2).
Matrix two_qubit_V(const VWeights& weights);

double v_alpha_expectation(const Matrix& rho, const Matrix& sigma, const HilbertSpace& space,
                           const ChiIndex& alpha, const VWeights& weights);
Matrix v_alpha_partial_trace(const Matrix& sigma, const HilbertSpace& space,
                             const ChiIndex& alpha, const VWeights& weights);

// <χ_α| (|ψ> ⊗ |φ>) from the four nonzero entries of χ_α.
Complex chi_overlap(const ChiIndex& alpha, int d_b, const Eigen::Ref<const Vector>& psi,
                    const Eigen::Ref<const Vector>& phi);

}  // namespace conc

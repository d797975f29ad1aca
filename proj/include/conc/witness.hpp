#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conc/bounds.hpp"

namespace conc {

// Single-copy Hermitian operator W with −tr(ρW) ≤ C(ρ) (aggregate W_σ) or
// −tr(ρW) ≤ ALB_α(ρ) (per-α W_σα).
class WitnessOperator {
 public:
  struct Meta {
    std::string sigma_ref;
    double normalizer = 1.0;         // C(σ) or ALB_α(σ)
    std::optional<ChiIndex> alpha;   // empty for the aggregate W_σ
    VWeights weights = {};           // V_(i) or convex V_α weights used to build it
    unsigned bipartition_mask = 1;   // multipartite cut the α refers to
  };

  WitnessOperator(HilbertSpace space, Matrix matrix, Meta meta);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  const Meta& meta() const { return meta_; }
  double normalizer() const { return meta_.normalizer; }
  const std::optional<ChiIndex>& alpha() const { return meta_.alpha; }

  // "Wsigma" or "Wsa_x{x}y{y}p{p}q{q}" (prefixed by "b{mask}_" for multipartite cuts).
  std::string name() const;

 private:
  HilbertSpace space_;
  Matrix matrix_;
  Meta meta_;
};

// W_σ = −tr₂(I ⊗ σ V_(i)) / C(σ). C(σ) is computed for rank-one σ; a mixed σ needs an
// explicit upper bound `c_sigma`.
WitnessOperator build_witness_sigma(const DensityOperator& sigma, int which,
                                    std::optional<double> c_sigma = std::nullopt,
                                    std::string sigma_ref = "sigma");
WitnessOperator build_witness_sigma(const PureState& sigma, int which,
                                    std::string sigma_ref = "sigma");

// W_σα = −tr₂(I ⊗ σ V_α) / ALB_α(σ).
WitnessOperator build_witness_sigma_alpha(const DensityOperator& sigma, const ChiIndex& alpha,
                                          const VWeights& weights = {},
                                          std::string sigma_ref = "sigma");

// Every W_σα with ALB_α(σ) > 0, in α order. Throws UnusableWitnessError if none.
std::vector<WitnessOperator> usable_witnesses(const DensityOperator& sigma,
                                              const VWeights& weights = {},
                                              std::string sigma_ref = "sigma");

BoundReport witness_bound(const DensityOperator& rho, const WitnessOperator& w);
// √(Σ tr(ρW_α)² over α with tr(ρW_α) ≤ 0).
BoundReport witness_sq_sum_bound(const DensityOperator& rho,
                                 std::span<const WitnessOperator> witnesses);

// ---------------------------------------------------------------------------------
// Local-observable bookkeeping.

struct LocalObservable {
  enum class Kind { projector, sigma1, sigma2 };
  Kind kind = Kind::projector;
  int a = 0;  // projector: |a><a|; sigma: pair (a, b), a < b
  int b = 0;

  std::string name() const;   // "P0", "s1_01", "s2_01"
  std::string basis() const;  // measurement basis: "Z" for projectors, else name()
  Matrix matrix(int d) const;
  double norm_sq() const { return kind == Kind::projector ? 1.0 : 2.0; }
};

// Hermitian orthogonal local basis: projectors then σ1/σ2 per pair.
std::vector<LocalObservable> local_basis(int d);

struct ScheduleTerm {
  int term_id = 0;
  int witness = 0;  // position in the decomposed family
  double coefficient = 0.0;
  LocalObservable factor_a;
  LocalObservable factor_b;
  int setting_group = 0;
};

// Terms with distinct (A, B) products count as separate observables; terms whose
// local bases coincide share a setting (all computational-basis projectors share one).
struct MeasurementSchedule {
  std::vector<ScheduleTerm> terms;
  int observable_count = 0;
  int setting_count = 0;
};

MeasurementSchedule local_decomposition(const WitnessOperator& w);
MeasurementSchedule local_decomposition(std::span<const WitnessOperator> family);

// Σ coefficient · A ⊗ B over the terms of one witness.
Matrix reconstruct(const MeasurementSchedule& schedule, int witness, const HilbertSpace& space);

void write_schedule_csv(std::ostream& os, const MeasurementSchedule& schedule);

}  // namespace conc

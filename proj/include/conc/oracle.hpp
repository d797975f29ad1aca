#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conc/bounds.hpp"

namespace conc {

struct SearchConfig {
  std::uint64_t seed = 42;
  int n_restarts = 8;
  int n_iterations = 10000;
  int decomposition_size = 0;  // 0: rank + 2
  double perturbation_scale = 1.0;

  void validate() const;
};

struct SearchResult {
  double value = 0.0;            // best decomposition cost found
  Matrix isometry;               // m × r, ψ = Φ Uᵀ
  std::vector<double> history;   // best-so-far after each iteration, restarts in order
};

// Upper bound on C(ρ) from Σ_i C(ψ_i) over searched decompositions. Uses the
// multipartite pure-state cost when ρ has more than two factors.
double min_search_concurrence(const DensityOperator& rho, const SearchConfig& cfg = {});
SearchResult min_search_concurrence_detailed(const DensityOperator& rho,
                                             const SearchConfig& cfg = {});

// min over searched decompositions of Σ_i |⟨χ_α|ψ_iψ_i⟩|.
double min_search_alb(const DensityOperator& rho, const ChiIndex& alpha,
                      const SearchConfig& cfg = {});
SearchResult min_search_alb_detailed(const DensityOperator& rho, const ChiIndex& alpha,
                                     const SearchConfig& cfg = {});

struct CheckResult {
  std::string name;
  long samples = 0;
  long violations = 0;
  double worst_margin = 0.0;   // smallest (lhs − rhs) style margin seen
  std::string first_violation;

  bool passed() const { return violations == 0; }
};

struct CaseMargin {
  std::string check;
  long case_id = 0;
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct OracleReport {
  std::vector<CheckResult> checks;
  std::vector<CaseMargin> cases;

  bool passed() const;
  const CheckResult* first_failure() const;
  void write_text(std::ostream& os) const;
  // Columns: check, case_id, label, lhs, rhs, margin.
  void write_csv(std::ostream& os) const;
};

// Samples ψ, φ, α and c₁ on the given spaces and checks
//   |⟨χ|ψψ⟩||⟨χ|φφ⟩| ≥ ⟨ψφ|V_α|ψφ⟩
// for V_(1)α, V_(2)α and the c₁ mix, plus each step of the supporting chain.
OracleReport verify_inequality_21(long n_samples, const std::vector<HilbertSpace>& spaces,
                                  std::uint64_t seed);

// C(ρ)² ≥ Σ_α ALB_α(ρ)² with C(ρ) replaced by its searched upper bound.
OracleReport verify_theorem_14(const std::vector<DensityOperator>& corpus,
                               const SearchConfig& cfg = {});

}  // namespace conc

#pragma once

#include <array>
#include <vector>

#include "conc/qstate.hpp"

namespace conc {

struct IsotropicParams {
  int d = 2;
  double fidelity = 0.0;

  IsotropicParams(int d, double fidelity);
  double g() const;  // (1−F)/(d²−1)
  double h() const;  // (Fd²−1)/(d²−1)
};

// |φ⁺⟩ = Σ_i |ii⟩/√d.
PureState phi_plus(int d);
// (|01⟩ + |12⟩ + |20⟩)/√3.
PureState phi_me();
// ρ_F = gI + h|φ⁺⟩⟨φ⁺|.
DensityOperator isotropic_state(int d, double fidelity);

double isotropic_exact_concurrence(int d, double fidelity);
// tr(ρ_F⊗ρ_F V_(i)) and Σ_α tr(ρ_F⊗ρ_F V_α) in closed form.
double isotropic_Vi_closed_form(int d, double fidelity);
double isotropic_Valpha_sum_closed_form(int d, double fidelity);

// √λ₀|01⟩ + √λ₁|12⟩ + √λ₂|20⟩.
PureState qutrit_initial_state(const std::array<double, 3>& lambdas);

PureState ghz_state(int n_qubits);
PureState w_state(int n_qubits);

// Local spontaneous decay on a qutrit pair:
// ℒρ = Σ_{L ∈ {γ⊗I, I⊗γ}} (Γ/2)(2LρL† − ρL†L − L†Lρ).
struct LindbladModel {
  double gamma_rate = 1.0;

  explicit LindbladModel(double gamma_rate = 1.0);
  static Matrix coupling();  // 3×3, γ(1,0) = √2, γ(2,1) = 1
  Matrix jump_a() const;    // γ ⊗ I₃
  Matrix jump_b() const;    // I₃ ⊗ γ
};

Matrix lindblad_rhs(const LindbladModel& model, const Matrix& rho);

struct Snapshot {
  double t = 0.0;  // in units of 1/Γ
  DensityOperator rho;
};

// Fixed-step RK4 from 0 to t_max, recording every `stride`-th step (and the last).
std::vector<Snapshot> evolve(const LindbladModel& model, const DensityOperator& rho0,
                             double t_max, double dt = 1e-3, int stride = 1);

// max{0, λ₁ − λ₂ − λ₃ − λ₄} with λ the decreasing square roots of eig(ρ ρ̃).
double wootters_concurrence(const DensityOperator& rho);

}  // namespace conc

// One PASS/FAIL line per acceptance criterion; exit status is nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "conc/bounds.hpp"
#include "conc/models.hpp"
#include "conc/multipartite.hpp"
#include "conc/oracle.hpp"
#include "conc/random.hpp"
#include "conc/twocopy.hpp"
#include "conc/witness.hpp"

using namespace conc;

namespace {

// Accumulates the worst excess over a tolerance and the first failure message.
struct Verdict {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
  void near(double a, double b, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": " << a << " vs " << b << " (tol " << tol << ")";
    require(std::abs(a - b) <= tol, os.str());
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

using Table = std::vector<std::vector<double>>;

// Numeric rows of a CSV with a header line.
Table parse_numeric_csv(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    t.push_back(row);
  }
  return t;
}

// C(ρ_F) = sqrt(2d/(d−1)) (F − 1/d) above the separability threshold.
double isotropic_reference(int d, double f) {
  return f <= 1.0 / d ? 0.0 : std::sqrt(2.0 * d / (d - 1.0)) * (f - 1.0 / d);
}

// C(Ψ)² from reduced purities, one odd-mask cut at a time.
double purity_multi_c2(const PureState& psi) {
  const HilbertSpace& s = psi.space();
  const int n = static_cast<int>(s.num_factors());
  double sum = 0.0;
  for (unsigned mask = 1; mask < (1u << n) - 1u; mask += 2) {
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
      if ((mask >> k) & 1u) keep.push_back(k);
    const Matrix r = partial_trace(psi.projector(), s.factor_dims(), keep);
    sum += 2.0 * (1.0 - (r * r).trace().real());
  }
  return std::pow(2.0, 2.0 - n) * sum;
}

Matrix block_isometry(Rng& rng, int d, int i, int j) {
  const Matrix u2 = haar_unitary(rng, 2);
  Matrix u = Matrix::Zero(d, d);
  const int idx[2] = {i, j};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) u(idx[r], idx[c]) = u2(r, c);
  return u;
}

// ---------------------------------------------------------------------------

Verdict isotropic_exactness() {
  Verdict v;
  for (int d = 2; d <= 4; ++d) {
    const PureState phi = phi_plus(d);
    const WitnessOperator w1 = build_witness_sigma(phi, 1), w2 = build_witness_sigma(phi, 2);
    const auto family = usable_witnesses(DensityOperator(phi));
    for (int k = 0; k <= 100; ++k) {
      const double f = k / 100.0;
      const DensityOperator rho = isotropic_state(d, f);
      const double c = isotropic_reference(d, f);
      const std::string ctx = "d=" + std::to_string(d) + " F=" + fmt(f);
      v.near(isotropic_exact_concurrence(d, f), c, 1e-10, ctx + " closed form");
      v.near(witness_bound(rho, w1).value, c, 1e-10, ctx + " W_sigma V1");
      v.near(witness_bound(rho, w2).value, c, 1e-10, ctx + " W_sigma V2");
      v.near(witness_sq_sum_bound(rho, family).value, c, 1e-10, ctx + " W_sq");
    }
  }
  return v;
}

Verdict figure_1() {
  Verdict v;
  for (int d = 2; d <= 4; ++d) {
    cli::IsotropicOptions o;
    o.d = d;
    std::ostringstream os;
    cli::cmd_isotropic(o, os);
    const Table t = parse_numeric_csv(os.str());
    v.require(t.size() == static_cast<std::size_t>(o.steps) + 1, "row count");
    double gain = 0.0;
    for (const auto& row : t) {
      const std::string ctx = "d=" + std::to_string(d) + " F=" + fmt(row[0]);
      v.require(row[3] >= row[2] - 1e-12, ctx + " Valpha_sum below Vi");
      gain = std::max(gain, row[3] - row[2]);
      if (d == 2) v.near(row[3], row[2], 1e-12, ctx + " d=2 columns");
    }
    if (d >= 3) v.require(gain > 1e-6, "no strict improvement for d=" + std::to_string(d));
    if (d == 4) {
      const auto& last = t.back();
      v.near(last[0], 1.0, 0.0, "last grid point");
      for (int c = 1; c <= 3; ++c) v.near(last[c], std::sqrt(1.5), 1e-10, "F=1 column " + std::to_string(c));
    }
  }
  return v;
}

Verdict figure_2() {
  Verdict v;
  const std::vector<std::array<double, 3>> cases{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                                                 {1.0 / 12.0, 5.0 / 6.0, 1.0 / 12.0}};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    cli::QutritDecayOptions o;
    o.lambdas = cases[c];
    o.t_max = 3.0;
    o.dt = 1e-3;
    o.stride = 10;
    std::ostringstream os;
    cli::cmd_qutrit_decay(o, os);
    const Table t = parse_numeric_csv(os.str());
    const std::string tag = "case " + std::to_string(c);
    v.require(t.size() == 301, tag + " row count");
    if (c == 0) {
      v.near(t[0][1], 2.0 / std::sqrt(3.0), 1e-8, tag + " W_sigma at t=0");
      v.near(t[0][2], 2.0 / std::sqrt(3.0), 1e-8, tag + " W_sq at t=0");
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      v.require(t[k][2] >= t[k][1] - 1e-10, tag + " W_sq below W_sigma at t=" + fmt(t[k][0]));
      if (k > 0) {
        v.require(t[k][1] <= t[k - 1][1] + 1e-12, tag + " W_sigma increases at t=" + fmt(t[k][0]));
        v.require(t[k][2] <= t[k - 1][2] + 1e-12, tag + " W_sq increases at t=" + fmt(t[k][0]));
      }
    }
    v.near(t.back()[0], 3.0, 1e-12, tag + " final time");
    v.require(t.back()[1] < 1e-3 && t.back()[2] < 1e-3, tag + " bounds not near zero at t=3");

    const auto traj = evolve(LindbladModel(o.gamma), DensityOperator(qutrit_initial_state(o.lambdas)),
                             o.t_max, o.dt, 300);
    for (std::size_t k = 1; k < traj.size(); ++k) {
      // traj[k] sits at Γt = 0.3 k, which is row 30 k of the table.
      const double ub = min_search_concurrence(traj[k].rho);
      const auto& row = t[30 * k];
      v.near(row[0], traj[k].t, 1e-12, tag + " sample time");
      v.require(row[1] <= ub + 5e-3 && row[2] <= ub + 5e-3,
                tag + " bound above search at t=" + fmt(row[0]) + " (search " + fmt(ub) + ")");
    }
    v.require(traj.size() == 11, tag + " sample count");
  }
  return v;
}

Verdict two_qubit_wootters() {
  Verdict v;
  Rng rng = derive_rng(20240501, 4);
  for (int k = 0; k < 500; ++k) {
    const DensityOperator rho = random_density(rng, HilbertSpace{2, 2}, 1 + k % 4);
    v.near(algebraic_lower_bound(rho, ChiIndex{0, 1, 0, 1}).value, wootters_concurrence(rho), 1e-10,
           "case " + std::to_string(k));
  }
  return v;
}

Verdict inequality_chain() {
  Verdict v;
  const OracleReport r =
      verify_inequality_21(10000, {HilbertSpace{2, 2}, HilbertSpace{2, 3}, HilbertSpace{3, 3}}, 42);
  for (const CheckResult& c : r.checks) {
    v.require(c.samples == 10000, c.name + " sample count");
    v.require(c.passed(), c.name + ": " + std::to_string(c.violations) + " violations, first " +
                              c.first_violation);
  }
  v.require(r.checks.size() == 16, "check count");
  return v;
}

Verdict theorem_sandwich() {
  Verdict v;
  std::vector<DensityOperator> corpus{DensityOperator(phi_me())};
  Rng rng = derive_rng(20240501, 6);
  for (int k = 0; k < 200; ++k) {
    const HilbertSpace s = k % 2 ? HilbertSpace{3, 3} : HilbertSpace{2, 2};
    corpus.push_back(random_density(rng, s, 2 + k % (s.total_dim() - 1)));
  }
  const OracleReport r = verify_theorem_14(corpus, SearchConfig{});
  v.require(r.passed(), "sandwich violated: " + (r.first_failure() ? r.first_failure()->first_violation
                                                                   : std::string()));
  v.near(r.cases.at(0).lhs, 4.0 / 3.0, 1e-8, "Phi_ME search side");
  v.near(r.cases.at(0).rhs, 4.0 / 3.0, 1e-8, "Phi_ME bound side");
  return v;
}

Verdict invariance() {
  Verdict v;
  Rng rng = derive_rng(20240501, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const HilbertSpace s = trial % 2 ? HilbertSpace{3, 3} : HilbertSpace{2, 3};
    const DensityOperator rho = random_density(rng, s, 1 + trial % 4);
    const Matrix u = kron(haar_unitary(rng, s.factor_dim(0)), haar_unitary(rng, s.factor_dim(1)));
    const Matrix rp = u * rho.matrix() * u.adjoint();
    for (int which : {1, 2}) {
      const TwoCopyOperator op = build_V(s, which);
      v.near(expectation(op, rp, rp).real(), expectation(op, rho.matrix(), rho.matrix()).real(), 1e-10,
             "local unitary V" + std::to_string(which));
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const HilbertSpace s = trial % 2 ? HilbertSpace{3, 3} : HilbertSpace{3, 4};
    const auto all = enumerate_chi_indices(s);
    const ChiIndex a = all[rng() % all.size()];
    const VWeights w{0.25 * (1 + trial % 3), 1.0 - 0.25 * (1 + trial % 3)};
    const DensityOperator rho = random_density(rng, s, 1 + trial % 5);
    const double base = v_alpha_expectation(rho.matrix(), rho.matrix(), s, a, w);

    const auto [ma, mb] = mask_projector(s, a);
    const Matrix m = kron(ma, mb);
    const Matrix masked = m * rho.matrix() * m;
    v.near(v_alpha_expectation(masked, masked, s, a, w), base, 1e-12, "masked V_alpha " + a.label());

    const DensityOperator sigma(random_pure_state(rng, s));
    const WitnessOperator wa = build_witness_sigma_alpha(sigma, a, w);
    const double trw = (rho.matrix() * wa.matrix()).trace().real();
    const double trw_masked = (masked * wa.matrix()).trace().real();
    v.near(trw_masked, trw, 1e-12, "masked witness " + a.label());

    const Matrix ua = block_isometry(rng, s.factor_dim(0), a.x, a.y);
    const Matrix ub = block_isometry(rng, s.factor_dim(1), a.p, a.q);
    const Matrix u = kron(ua, ub);
    const Matrix rp = u * rho.matrix() * u.adjoint();
    v.near(v_alpha_expectation(rp, rp, s, a, w), base, 1e-10, "partial isometry V_alpha " + a.label());

    const Vector chi = chi_vector(s, a).vector;
    const Vector moved = kron(u, u) * chi;
    const Complex phase = chi.dot(moved) / chi.squaredNorm();
    v.near(std::abs(phase), 1.0, 1e-12, "chi phase modulus");
    v.require((moved - phase * chi).norm() < 1e-12, "chi not a phase multiple");

    const DensityOperator rho_p(s, rp);
    v.require(algebraic_lower_bound(rho_p, a).value <= algebraic_lower_bound(rho, a).value + 1e-10,
              "ALB grows under partial isometry " + a.label());
    v.require(algebraic_lower_bound(DensityOperator(s, masked), a).value <=
                  algebraic_lower_bound(rho, a).value + 1e-10,
              "ALB grows under masking " + a.label());
  }
  return v;
}

Verdict multipartite() {
  Verdict v;
  Rng rng = derive_rng(20240501, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const HilbertSpace s = trial % 2 ? HilbertSpace{2, 2, 3} : HilbertSpace{2, 2, 2};
    const PureState psi = random_pure_state(rng, s);
    double sum = 0.0;
    for (const Complex& z : chi_gamma_overlaps(psi)) sum += std::norm(z);
    const double c = multipartite_pure_concurrence(psi);
    v.near(0.5 * sum, c * c, 1e-10, "chi gamma identity");
    v.near(purity_multi_c2(psi), c * c, 1e-10, "purity form");

    const DensityOperator rho(psi);
    v.require(multipartite_sum_sq_bound(rho).value <= c + 1e-10, "sum of squares above C");
    v.require(multipartite_two_copy_bound(rho).value <= c + 1e-10, "two copy above C");
    v.require(multipartite_witness_bound(rho, DensityOperator(random_pure_state(rng, s))).value <= c + 1e-10,
              "witness above C");
    Vector z = gaussian_matrix(rng, static_cast<int>(enumerate_chi_gamma(s).size()), 1).col(0);
    z.normalize();
    v.require(multipartite_lb_tau(rho, z).value <= c + 1e-10, "lb_tau above C");
  }
  v.near(multipartite_pure_concurrence(ghz_state(3)), std::sqrt(1.5), 1e-10, "GHZ3");
  v.near(multipartite_pure_concurrence(w_state(3)), 2.0 / std::sqrt(3.0), 1e-10, "W3");

  for (int trial = 0; trial < 20; ++trial) {
    const HilbertSpace s = trial % 2 ? HilbertSpace{3, 3} : HilbertSpace{2, 3};
    const DensityOperator rho = random_density(rng, s, 1 + trial % 4);
    const PureState psi = random_pure_state(rng, s);
    v.near(multipartite_pure_concurrence(psi), pure_concurrence(psi), 1e-12, "N=2 pure");
    v.near(multipartite_sum_sq_bound(rho).value, sum_sq_algebraic_bound(rho).value, 1e-12, "N=2 sumsq");
    v.near(multipartite_two_copy_bound(rho).value, two_copy_bound_Valpha_sum(rho).value, 1e-12,
           "N=2 two copy");
    const DensityOperator sigma(psi);
    v.near(multipartite_witness_bound(rho, sigma).value,
           witness_sq_sum_bound(rho, usable_witnesses(sigma)).value, 1e-12, "N=2 witness");
  }
  return v;
}

Verdict witness_bookkeeping() {
  Verdict v;
  const DensityOperator sigma(phi_me());
  for (int which = 1; which <= 2; ++which) {
    const auto family = usable_witnesses(sigma, VWeights::only(which));
    v.require(family.size() == 3, "family size");
    Matrix sum = Matrix::Zero(9, 9);
    for (const auto& w : family) sum += w.matrix();
    const Matrix agg = build_witness_sigma(phi_me(), which).matrix();
    v.near((agg - sum / std::sqrt(3.0)).cwiseAbs().maxCoeff(), 0.0, 1e-12,
           "aggregate identity V" + std::to_string(which));
    const MeasurementSchedule s = local_decomposition(std::span<const WitnessOperator>(family));
    v.require(s.observable_count == 12, "observables=" + std::to_string(s.observable_count));
    v.require(s.setting_count == 7, "settings=" + std::to_string(s.setting_count));
    for (int i = 0; i < 3; ++i) {
      v.near((reconstruct(s, i, sigma.space()) - family[i].matrix()).cwiseAbs().maxCoeff(), 0.0, 1e-12,
             "schedule reconstruction");
    }
  }
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "isotropic exactness", 10, isotropic_exactness},
      {2, "figure 1 regeneration", 5, figure_1},
      {3, "figure 2 regeneration", 120, figure_2},
      {4, "two-qubit oracle equivalence", 30, two_qubit_wootters},
      {5, "inequality chain", 60, inequality_chain},
      {6, "sum-of-squares sandwich", 300, theorem_sandwich},
      {7, "invariance suite", 60, invariance},
      {8, "multipartite", 60, multipartite},
      {9, "witness bookkeeping", 5, witness_bookkeeping},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (v.ok && secs >= c.budget_s) {
      v.ok = false;
      v.note = "over time budget of " + fmt(c.budget_s) + " s";
    }
    std::printf("criterion %d %s: %s (%.2f s)%s%s\n", c.id, c.name, v.ok ? "PASS" : "FAIL", secs,
                v.note.empty() ? "" : " ", v.note.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

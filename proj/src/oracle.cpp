#include "conc/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <tuple>
#include <ostream>

#include "conc/multipartite.hpp"
#include "conc/parallel.hpp"
#include "conc/random.hpp"

namespace conc {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ColRef = Eigen::Ref<const Vector>;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double bipartite_cost(const ColRef& v, int da, int db) {
  const Eigen::Map<const RowMatrix> c(v.data(), da, db);
  const double n = v.squaredNorm();
  const double purity = (c * c.adjoint()).squaredNorm();
  return std::sqrt(std::max(0.0, 2.0 * (n * n - purity)));
}

void orthonormalize(Matrix& u) {
  Eigen::HouseholderQR<Matrix> qr(u);
  Matrix q = qr.householderQ() * Matrix::Identity(u.rows(), u.cols());
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  u = std::move(q);
}

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  Matrix isometry;
  std::vector<double> history;
};

// Greedy search over m × r isometries using random Givens rotations between pairs of
// decomposition members. Each accepted move changes only two members, so the cost is
// updated incrementally.
template <typename Cost>
RestartOutcome run_restart(const Matrix& phi, int m, const SearchConfig& cfg, int index,
                           const Cost& cost) {
  const int r = static_cast<int>(phi.cols());
  Rng rng = derive_rng(cfg.seed, static_cast<std::uint64_t>(index));
  Matrix u = index == 0 ? Matrix(Matrix::Identity(m, r)) : haar_isometry(rng, m, r);
  Matrix psi = phi * u.transpose();
  std::vector<double> costs(m);
  auto recompute = [&] {
    psi = phi * u.transpose();
    double total = 0.0;
    for (int i = 0; i < m; ++i) total += (costs[i] = cost(psi.col(i)));
    return total;
  };
  double total = recompute();
  RestartOutcome out;
  out.history.reserve(cfg.n_iterations);
  if (m < 2) {
    out.history.assign(cfg.n_iterations, total);
    out.value = total;
    out.isometry = u;
    return out;
  }
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::normal_distribution<double> angle(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  double scale = cfg.perturbation_scale;
  int stall = 0;
  long accepted = 0;
  Vector ni, nj;
  for (int it = 0; it < cfg.n_iterations; ++it) {
    int i = pick(rng);
    int j = pick(rng);
    while (j == i) j = pick(rng);
    const double th = scale * angle(rng);
    const Complex e = std::polar(1.0, phase(rng));
    const double c = std::cos(th), s = std::sin(th);
    ni = c * psi.col(i) + (e * s) * psi.col(j);
    nj = (-std::conj(e) * s) * psi.col(i) + c * psi.col(j);
    const double ci = cost(ni), cj = cost(nj);
    const double delta = ci + cj - costs[i] - costs[j];
    if (delta < -1e-15 * std::max(1.0, total)) {
      psi.col(i) = ni;
      psi.col(j) = nj;
      const Eigen::RowVectorXcd ui = u.row(i);
      const Eigen::RowVectorXcd uj = u.row(j);
      u.row(i) = c * ui + (e * s) * uj;
      u.row(j) = (-std::conj(e) * s) * ui + c * uj;
      costs[i] = ci;
      costs[j] = cj;
      total += delta;
      stall = 0;
      if (++accepted % 1000 == 0) {
        orthonormalize(u);
        total = recompute();
      }
    } else if (++stall == 50) {
      scale *= 0.5;
      stall = 0;
    }
    out.history.push_back(total);
    if (scale < 1e-12) {
      out.history.resize(cfg.n_iterations, total);
      break;
    }
  }
  orthonormalize(u);
  out.value = recompute();
  // Re-orthonormalization can only move the value by roundoff; keep history monotone.
  if (!out.history.empty()) out.history.back() = std::min(out.history.back(), out.value);
  out.isometry = std::move(u);
  return out;
}

template <typename Cost>
SearchResult search(const DensityOperator& rho, const SearchConfig& cfg, const Cost& cost) {
  cfg.validate();
  const Decomposition dec = eigen_decomposition(rho);
  const int r = dec.size();
  SearchResult res;
  if (r == 0) {
    res.history.assign(static_cast<std::size_t>(cfg.n_iterations) * cfg.n_restarts, 0.0);
    return res;
  }
  const int m = cfg.decomposition_size > 0 ? cfg.decomposition_size : r + 2;
  if (m < r) throw ArgumentError("SearchConfig: decomposition_size below rank(rho)");
  std::vector<RestartOutcome> outcomes(cfg.n_restarts);
  parallel_for(cfg.n_restarts,
               [&](int k) { outcomes[k] = run_restart(dec.members(), m, cfg, k, cost); });
  double best = std::numeric_limits<double>::infinity();
  res.value = best;
  for (auto& o : outcomes) {
    for (double h : o.history) res.history.push_back(best = std::min(best, h));
    if (o.value < res.value) {
      res.value = o.value;
      res.isometry = std::move(o.isometry);
    }
  }
  return res;
}

struct Chain {
  double aa = 0.0;
  double bb = 0.0;     // |BB|
  double cc = 0.0;     // |CC|
  double t1sq = 0.0;   // |ψxq φyq − ψyq φxq|²
  double t2sq = 0.0;   // |ψxp φyp − ψyp φxp|²
  Complex z;           // (ψxp φyq − ψyp φxq)(ψyq φxp − ψxq φyp)*
};

// Terms of the expansion of ⟨ψφ|V_(2)α|ψφ⟩ on coefficient matrices P (ψ) and F (φ).
Chain chain_terms(const Matrix& P, const Matrix& F, int x, int y, int p, int q) {
  auto re = [](Complex a) { return a.real(); };
  Chain c;
  const Complex pxp = P(x, p), pxq = P(x, q), pyp = P(y, p), pyq = P(y, q);
  const Complex fxp = F(x, p), fxq = F(x, q), fyp = F(y, p), fyq = F(y, q);
  c.aa = -2.0 * re(pxp * fyq * std::conj(pxq) * std::conj(fyp)) -
         2.0 * re(pyp * fxq * std::conj(pyq) * std::conj(fxp)) +
         2.0 * re(pxp * fyq * std::conj(pyq) * std::conj(fxp)) +
         2.0 * re(pxq * fyp * std::conj(pyp) * std::conj(fxq));
  c.bb = std::abs((pxp * pyq - pxq * pyp) * (fxp * fyq - fxq * fyp));
  const Complex t1 = pxq * fyq - pyq * fxq;
  const Complex t2 = pxp * fyp - pyp * fxp;
  c.t1sq = std::norm(t1);
  c.t2sq = std::norm(t2);
  c.cc = std::abs(t1 * t2);
  c.z = (pxp * fyq - pyp * fxq) * std::conj(pyq * fxp - pxq * fyp);
  return c;
}

struct Tally {
  CheckResult result;
  double tol;

  Tally(std::string name, double tol_) : tol(tol_) {
    result.name = std::move(name);
    result.worst_margin = std::numeric_limits<double>::infinity();
  }
  // Margin ≥ −tol passes.
  void add(double margin, const std::string& context) {
    ++result.samples;
    result.worst_margin = std::min(result.worst_margin, margin);
    if (margin < -tol) {
      if (result.violations == 0) result.first_violation = context + " margin=" + fmt(margin);
      ++result.violations;
    }
  }
  // Equality within tol.
  void add_identity(double a, double b, const std::string& context) {
    add(-std::abs(a - b), context);
  }
};

}  // namespace

void SearchConfig::validate() const {
  if (n_restarts < 1 || n_iterations < 1 || decomposition_size < 0 || !(perturbation_scale > 0.0)) {
    throw ArgumentError("SearchConfig: restarts, iterations and scale must be positive");
  }
}

SearchResult min_search_concurrence_detailed(const DensityOperator& rho, const SearchConfig& cfg) {
  const HilbertSpace& space = rho.space();
  if (space.is_bipartite()) {
    const int da = space.factor_dim(0), db = space.factor_dim(1);
    return search(rho, cfg, [da, db](const ColRef& v) { return bipartite_cost(v, da, db); });
  }
  check_capacity(space);
  return search(rho, cfg, [&space](const ColRef& v) {
    if (v.squaredNorm() <= 0.0) return 0.0;
    return multipartite_pure_concurrence(PureState(space, v));
  });
}

double min_search_concurrence(const DensityOperator& rho, const SearchConfig& cfg) {
  return min_search_concurrence_detailed(rho, cfg).value;
}

SearchResult min_search_alb_detailed(const DensityOperator& rho, const ChiIndex& alpha,
                                     const SearchConfig& cfg) {
  const HilbertSpace& space = rho.space();
  require_bipartite(space, "min_search_alb");
  validate_chi(alpha, space.factor_dim(0), space.factor_dim(1));
  const int db = space.factor_dim(1);
  return search(rho, cfg,
                [alpha, db](const ColRef& v) { return std::abs(chi_overlap(alpha, db, v, v)); });
}

double min_search_alb(const DensityOperator& rho, const ChiIndex& alpha, const SearchConfig& cfg) {
  return min_search_alb_detailed(rho, alpha, cfg).value;
}

bool OracleReport::passed() const {
  return first_failure() == nullptr;
}

const CheckResult* OracleReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed()) return &c;
  }
  return nullptr;
}

void OracleReport::write_text(std::ostream& os) const {
  for (const auto& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-18s samples=%ld violations=%ld worst_margin=%.6e %s\n",
                  c.name.c_str(), c.samples, c.violations, c.worst_margin,
                  c.passed() ? "PASS" : "FAIL");
    os << buf;
    if (!c.passed()) os << "  first violation: " << c.first_violation << '\n';
  }
  os << "result: " << (passed() ? "PASS" : "FAIL") << '\n';
}

void OracleReport::write_csv(std::ostream& os) const {
  os << "check,case_id,label,lhs,rhs,margin\n";
  for (const auto& c : cases) {
    os << c.check << ',' << c.case_id << ',' << c.label << ',' << fmt(c.lhs) << ',' << fmt(c.rhs)
       << ',' << fmt(c.margin) << '\n';
  }
}

OracleReport verify_inequality_21(long n_samples, const std::vector<HilbertSpace>& spaces,
                                  std::uint64_t seed) {
  if (spaces.empty()) throw ArgumentError("verify_inequality_21: no spaces given");
  for (const auto& s : spaces) require_bipartite(s, "verify_inequality_21");
  constexpr double tol = 1e-12;
  Tally ineq_v1("ineq21_V1", tol), ineq_v2("ineq21_V2", tol), ineq_mix("ineq21_mix", tol);
  Tally a1_v1("A1_V1", tol), a1_v2("A1_V2", tol), a2("A2", tol);
  Tally a3_v1("A3_V1", tol), a3_v2("A3_V2", tol), a4_v1("A4_V1", tol), a4_v2("A4_V2", tol);
  Tally a5re_v1("A5_re_V1", tol), a5re_v2("A5_re_V2", tol);
  Tally a5_v1("A5_mod_V1", tol), a5_v2("A5_mod_V2", tol);
  Tally br_v1("A5_bridge_V1", tol), br_v2("A5_bridge_V2", tol);
  OracleReport report;
  Rng rng = derive_rng(seed, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long n = 0; n < n_samples; ++n) {
    const HilbertSpace& space = spaces[rng() % spaces.size()];
    const int da = space.factor_dim(0), db = space.factor_dim(1);
    const Vector psi = random_unit_vector(rng, space.total_dim());
    const Vector phi = random_unit_vector(rng, space.total_dim());
    const auto indices = enumerate_chi_indices(space);
    const ChiIndex a = indices[rng() % indices.size()];
    const double c1 = unit(rng);
    const std::string ctx = "sample=" + std::to_string(n) + " space=" + space.to_string() +
                            " alpha=" + a.label() + " c1=" + fmt(c1);

    const double lhs =
        std::abs(chi_overlap(a, db, psi, psi)) * std::abs(chi_overlap(a, db, phi, phi));
    const Matrix rp = psi * psi.adjoint();
    const Matrix rf = phi * phi.adjoint();
    const double r1 = v_alpha_expectation(rp, rf, space, a, VWeights::only(1));
    const double r2 = v_alpha_expectation(rp, rf, space, a, VWeights::only(2));
    const double rm = v_alpha_expectation(rp, rf, space, a, {c1, 1.0 - c1});
    ineq_v1.add(lhs - r1, ctx);
    ineq_v2.add(lhs - r2, ctx);
    ineq_mix.add(lhs - rm, ctx);
    report.cases.push_back({"ineq21", n, space.to_string() + ":" + a.label(), lhs,
                            std::max({r1, r2, rm}), lhs - std::max({r1, r2, rm})});

    const Matrix P = coefficient_matrix(psi, da, db);
    const Matrix F = coefficient_matrix(phi, da, db);
    const Chain k2 = chain_terms(P, F, a.x, a.y, a.p, a.q);
    // V_(1)α is V_(2)α with the roles of A and B exchanged.
    const Chain k1 = chain_terms(P.transpose(), F.transpose(), a.p, a.q, a.x, a.y);

    a1_v2.add_identity(r2, 2.0 * (-k2.t1sq - k2.t2sq + k2.aa), ctx);
    a1_v1.add_identity(r1, 2.0 * (-k1.t1sq - k1.t2sq + k1.aa), ctx);
    a2.add_identity(lhs, 4.0 * k2.bb, ctx);
    for (auto [k, a3, a4, a5re, a5, br] :
         {std::tuple{&k1, &a3_v1, &a4_v1, &a5re_v1, &a5_v1, &br_v1},
          std::tuple{&k2, &a3_v2, &a4_v2, &a5re_v2, &a5_v2, &br_v2}}) {
      a3->add(2.0 * k->bb + k->t1sq + k->t2sq - k->aa, ctx);
      a4->add(2.0 * k->bb + 2.0 * k->cc - k->aa, ctx);
      a5re->add_identity(k->z.real(), 0.5 * k->aa, ctx);
      a5->add(std::abs(k->z) - 0.5 * k->aa, ctx);
      br->add(k->bb + k->cc - std::abs(k->z), ctx);
    }
  }
  for (Tally* t : {&ineq_v1, &ineq_v2, &ineq_mix, &a1_v1, &a1_v2, &a2, &a3_v1, &a3_v2, &a4_v1,
                   &a4_v2, &a5re_v1, &a5re_v2, &a5_v1, &a5_v2, &br_v1, &br_v2}) {
    report.checks.push_back(std::move(t->result));
  }
  return report;
}

OracleReport verify_theorem_14(const std::vector<DensityOperator>& corpus,
                               const SearchConfig& cfg) {
  Tally t("theorem_14", 0.0);
  OracleReport report;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const DensityOperator& rho = corpus[i];
    SearchConfig c = cfg;
    c.seed = cfg.seed + 1000003ull * i;
    const double ub = min_search_concurrence(rho, c);
    const double lb = rho.space().is_bipartite() ? sum_sq_algebraic_bound(rho).value
                                                 : multipartite_sum_sq_bound(rho).value;
    const double margin = ub * ub + 1e-6 - lb * lb;
    t.add(margin, "case=" + std::to_string(i) + " space=" + rho.space().to_string() +
                      " C_search^2=" + fmt(ub * ub) + " sumsq^2=" + fmt(lb * lb));
    report.cases.push_back({"theorem_14", static_cast<long>(i), rho.space().to_string(), ub * ub,
                            lb * lb, margin});
  }
  report.checks.push_back(std::move(t.result));
  return report;
}

}  // namespace conc

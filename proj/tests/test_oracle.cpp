#include <cmath>
#include <sstream>

#include "doctest.h"

#include "conc/models.hpp"
#include "conc/multipartite.hpp"
#include "conc/oracle.hpp"
#include "conc/random.hpp"
#include "helpers.hpp"

using namespace conc;

namespace {

SearchConfig quick_config(std::uint64_t seed = 42) {
  SearchConfig c;
  c.seed = seed;
  c.n_restarts = 4;
  c.n_iterations = 3000;
  return c;
}

}  // namespace

TEST_CASE("search is exact on pure states") {
  Rng rng = derive_rng(81, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi = random_pure_state(rng, HilbertSpace{3, 3});
    const DensityOperator rho(psi);
    CHECK(std::abs(min_search_concurrence(rho, quick_config()) - pure_concurrence(psi)) < 1e-6);
    const ChiIndex a{0, 1, 1, 2};
    CHECK(std::abs(min_search_alb(rho, a, quick_config()) - std::abs(chi_overlap(a, 3, psi.amplitudes(), psi.amplitudes()))) < 1e-6);
  }
}

TEST_CASE("search tracks Wootters on qubits") {
  Rng rng = derive_rng(82, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho = random_density(rng, HilbertSpace{2, 2}, 2 + trial % 3);
    const double c = wootters_concurrence(rho);
    const double ub = min_search_concurrence(rho);
    CHECK(ub >= c - 1e-9);
    CHECK(ub <= c + 5e-3);
  }
}

TEST_CASE("search upper bounds the isotropic concurrence") {
  const DensityOperator rho = isotropic_state(3, 0.9);
  CHECK(min_search_concurrence(rho, quick_config()) >= isotropic_exact_concurrence(3, 0.9) - 1e-9);
}

TEST_CASE("ALB search reaches the closed form") {
  const DensityOperator sigma(phi_me());
  CHECK(std::abs(min_search_alb(sigma, ChiIndex{0, 1, 1, 2}, quick_config()) - 2.0 / 3.0) < 5e-3);
  Rng rng = derive_rng(83, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const HilbertSpace s = trial % 2 ? HilbertSpace{3, 3} : HilbertSpace{2, 2};
    const DensityOperator rho = random_density(rng, s, s.total_dim() == 4 ? 2 : 3);
    const auto all = enumerate_chi_indices(s);
    const ChiIndex a = all[trial % all.size()];
    const double closed = algebraic_lower_bound(rho, a).value;
    const double searched = min_search_alb(rho, a);
    CHECK(searched >= closed - 1e-8);
    CHECK(searched <= closed + 5e-3);
  }
}

TEST_CASE("search history is monotone and reproducible") {
  Rng rng = derive_rng(84, 0);
  const DensityOperator rho = random_density(rng, HilbertSpace{3, 3}, 3);
  const SearchConfig cfg = quick_config(7);
  const SearchResult a = min_search_concurrence_detailed(rho, cfg);
  const SearchResult b = min_search_concurrence_detailed(rho, cfg);
  CHECK(a.value == b.value);
  CHECK(a.history == b.history);
  CHECK(a.history.size() == static_cast<std::size_t>(cfg.n_restarts) * cfg.n_iterations);
  for (std::size_t i = 1; i < a.history.size(); ++i) CHECK(a.history[i] <= a.history[i - 1]);
  CHECK(std::abs(a.history.back() - a.value) < 1e-12);
  CHECK(a.isometry.rows() == 5);
  CHECK(max_abs(a.isometry.adjoint() * a.isometry - Matrix::Identity(3, 3)) < 1e-10);
  const Decomposition d = rotate_decomposition(eigen_decomposition(rho), a.isometry);
  CHECK(max_abs(d.reconstruct() - rho.matrix()) < 1e-10);
  double cost = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    if (d.members().col(i).squaredNorm() > 0.0) cost += pure_concurrence(d.state(i));
  }
  CHECK(std::abs(cost - a.value) < 1e-9);
}

TEST_CASE("search results do not depend on the thread count") {
  Rng rng = derive_rng(85, 0);
  const DensityOperator rho = random_density(rng, HilbertSpace{2, 3}, 3);
  const SearchConfig cfg = quick_config(9);
  setenv("CONCURRENCE_BOUNDS_THREADS", "1", 1);
  const SearchResult one = min_search_concurrence_detailed(rho, cfg);
  setenv("CONCURRENCE_BOUNDS_THREADS", "3", 1);
  const SearchResult three = min_search_concurrence_detailed(rho, cfg);
  unsetenv("CONCURRENCE_BOUNDS_THREADS");
  CHECK(one.value == three.value);
  CHECK(one.history == three.history);
}

TEST_CASE("multipartite search") {
  const DensityOperator ghz(ghz_state(3));
  SearchConfig cfg = quick_config();
  cfg.n_iterations = 500;
  CHECK(std::abs(min_search_concurrence(ghz, cfg) - std::sqrt(1.5)) < 1e-6);
  Rng rng = derive_rng(86, 0);
  const DensityOperator rho = random_density(rng, HilbertSpace{2, 2, 2}, 2);
  CHECK(min_search_concurrence(rho, cfg) >= multipartite_sum_sq_bound(rho).value - 1e-9);
}

TEST_CASE("search config validation") {
  SearchConfig c;
  c.n_restarts = 0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = SearchConfig{};
  c.perturbation_scale = 0.0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = SearchConfig{};
  c.decomposition_size = 1;
  Rng rng = derive_rng(87, 0);
  CHECK_THROWS_AS(min_search_concurrence(random_density(rng, HilbertSpace{2, 2}, 3), c), ArgumentError);
}

TEST_CASE("two-copy inequality verification") {
  const OracleReport r = verify_inequality_21(3000, {HilbertSpace{2, 2}, HilbertSpace{2, 3}, HilbertSpace{3, 3}}, 42);
  CHECK(r.passed());
  CHECK(r.checks.size() == 16);
  for (const CheckResult& c : r.checks) {
    CHECK(c.samples == 3000);
    CHECK(c.violations == 0);
  }
  CHECK(r.cases.size() == 3000);
}

TEST_CASE("two-copy inequality special cases") {
  Rng rng = derive_rng(88, 0);
  const HilbertSpace s{3, 3};
  for (int trial = 0; trial < 100; ++trial) {
    const ChiIndex a = enumerate_chi_indices(s)[trial % 9];
    const Vector psi = random_unit_vector(rng, 9);
    const Matrix rp = psi * psi.adjoint();
    const double diag = v_alpha_expectation(rp, rp, s, a, {0.5, 0.5});
    CHECK(std::pow(std::abs(chi_overlap(a, 3, psi, psi)), 2) >= diag - 1e-12);
    const Vector prod = kron(random_unit_vector(rng, 3), random_unit_vector(rng, 3));
    const Vector phi = random_unit_vector(rng, 9);
    CHECK(std::abs(chi_overlap(a, 3, prod, prod)) < 1e-14);
    CHECK(v_alpha_expectation(prod * prod.adjoint(), phi * phi.adjoint(), s, a, {0.3, 0.7}) <= 1e-12);
  }
}

TEST_CASE("oracle reports are deterministic") {
  const std::vector<HilbertSpace> spaces{HilbertSpace{2, 3}};
  std::ostringstream a, b, ca, cb;
  const OracleReport r1 = verify_inequality_21(200, spaces, 5);
  const OracleReport r2 = verify_inequality_21(200, spaces, 5);
  r1.write_text(a);
  r2.write_text(b);
  r1.write_csv(ca);
  r2.write_csv(cb);
  CHECK(a.str() == b.str());
  CHECK(ca.str() == cb.str());
  CHECK(a.str().find("result: PASS") != std::string::npos);
  CHECK(ca.str().rfind("check,case_id,label,lhs,rhs,margin\n", 0) == 0);
}

TEST_CASE("sum of squares sandwich") {
  std::vector<DensityOperator> corpus{DensityOperator(phi_me())};
  Rng rng = derive_rng(89, 0);
  for (int k = 0; k < 6; ++k) {
    const HilbertSpace s = k % 2 ? HilbertSpace{3, 3} : HilbertSpace{2, 2};
    corpus.push_back(random_density(rng, s, 1 + k % 3));
  }
  Matrix sep = Matrix::Zero(9, 9);
  for (int k = 0; k < 3; ++k) {
    const Vector v = kron(random_unit_vector(rng, 3), random_unit_vector(rng, 3));
    sep += v * v.adjoint() / 3.0;
  }
  corpus.emplace_back(HilbertSpace{3, 3}, sep);
  const OracleReport r = verify_theorem_14(corpus, quick_config());
  CHECK(r.passed());
  REQUIRE(r.cases.size() == corpus.size());
  CHECK(std::abs(r.cases[0].lhs - 4.0 / 3.0) < 1e-8);
  CHECK(std::abs(r.cases[0].rhs - 4.0 / 3.0) < 1e-8);
  CHECK(r.cases.back().rhs < 1e-10);
}

TEST_CASE("failing checks are reported") {
  OracleReport r;
  r.checks.push_back({"ok", 1, 0, 0.0, ""});
  r.checks.push_back({"bad", 2, 1, -1.0, "sample=1"});
  CHECK_FALSE(r.passed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "bad");
  std::ostringstream os;
  r.write_text(os);
  CHECK(os.str().find("FAIL") != std::string::npos);
  CHECK(os.str().find("first violation: sample=1") != std::string::npos);
}

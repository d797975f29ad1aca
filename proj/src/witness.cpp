#include "conc/witness.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "conc/tensor.hpp"

namespace conc {

WitnessOperator::WitnessOperator(HilbertSpace space, Matrix matrix, Meta meta)
    : space_(std::move(space)), matrix_(std::move(matrix)), meta_(std::move(meta)) {
  if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim()) {
    throw ArgumentError("WitnessOperator: matrix shape does not match space");
  }
  if (!is_hermitian(matrix_)) throw ValidationError("WitnessOperator: matrix is not Hermitian");
  if (!(meta_.normalizer > 0.0)) throw UnusableWitnessError("WitnessOperator: normalizer must be > 0");
}

std::string WitnessOperator::name() const {
  if (!meta_.alpha) return "Wsigma";
  const std::string base = "Wsa_" + meta_.alpha->label();
  if (space_.num_factors() == 2) return base;
  return "b" + std::to_string(meta_.bipartition_mask) + "_" + base;
}

WitnessOperator build_witness_sigma(const DensityOperator& sigma, int which,
                                    std::optional<double> c_sigma, std::string sigma_ref) {
  require_bipartite(sigma.space(), "build_witness_sigma");
  double c = 0.0;
  if (c_sigma) {
    c = *c_sigma;
  } else {
    const Decomposition dec = eigen_decomposition(sigma);
    if (dec.size() != 1) {
      throw UnusableWitnessError(
          "build_witness_sigma: sigma is mixed; supply an upper bound on C(sigma)");
    }
    c = pure_concurrence(dec.state(0));
  }
  if (!(c > tol::witness_normalizer)) {
    throw UnusableWitnessError("build_witness_sigma: C(sigma) = 0, witness unusable");
  }
  const TwoCopyOperator v = build_V(sigma.space(), which);
  Matrix w = -partial_trace_second_copy(v, sigma.matrix()) / c;
  w = (0.5 * (w + w.adjoint())).eval();
  WitnessOperator::Meta meta{std::move(sigma_ref), c, std::nullopt, VWeights::only(which), 1};
  return WitnessOperator(sigma.space(), std::move(w), std::move(meta));
}

WitnessOperator build_witness_sigma(const PureState& sigma, int which, std::string sigma_ref) {
  return build_witness_sigma(DensityOperator(sigma), which, std::nullopt, std::move(sigma_ref));
}

WitnessOperator build_witness_sigma_alpha(const DensityOperator& sigma, const ChiIndex& alpha,
                                          const VWeights& weights, std::string sigma_ref) {
  require_bipartite(sigma.space(), "build_witness_sigma_alpha");
  weights.validate();
  const double alb = algebraic_lower_bound(sigma, alpha).value;
  if (!(alb > tol::witness_normalizer)) {
    throw UnusableWitnessError("build_witness_sigma_alpha: ALB_" + alpha.label() +
                               "(sigma) = 0, witness unusable");
  }
  Matrix w = -v_alpha_partial_trace(sigma.matrix(), sigma.space(), alpha, weights) / alb;
  w = (0.5 * (w + w.adjoint())).eval();
  WitnessOperator::Meta meta{std::move(sigma_ref), alb, alpha, weights, 1};
  return WitnessOperator(sigma.space(), std::move(w), std::move(meta));
}

std::vector<WitnessOperator> usable_witnesses(const DensityOperator& sigma,
                                              const VWeights& weights, std::string sigma_ref) {
  const Decomposition dec = eigen_decomposition(sigma);
  std::vector<WitnessOperator> out;
  for (const auto& a : enumerate_chi_indices(sigma.space())) {
    if (algebraic_lower_bound(dec, a).value > tol::witness_normalizer) {
      out.push_back(build_witness_sigma_alpha(sigma, a, weights, sigma_ref));
    }
  }
  if (out.empty()) throw UnusableWitnessError("no chi index with ALB(sigma) > 0");
  return out;
}

BoundReport witness_bound(const DensityOperator& rho, const WitnessOperator& w) {
  if (!(rho.space() == w.space())) throw ArgumentError("witness_bound: space mismatch");
  const double t = real_checked(rho.matrix().cwiseProduct(w.matrix().transpose()).sum(),
                                "tr(rho W)");
  BoundReport r;
  r.kind = BoundKind::witness;
  r.raw_value = -t;
  r.value = std::max(0.0, -t);
  if (w.alpha()) r.per_alpha.push_back({*w.alpha(), t, w.meta().bipartition_mask});
  return r;
}

BoundReport witness_sq_sum_bound(const DensityOperator& rho,
                                 std::span<const WitnessOperator> witnesses) {
  BoundReport r;
  r.kind = BoundKind::witness_sq_sum;
  for (const auto& w : witnesses) {
    if (!(w.space() == rho.space())) throw ArgumentError("witness_sq_sum_bound: space mismatch");
    const double t = real_checked(rho.matrix().cwiseProduct(w.matrix().transpose()).sum(),
                                  "tr(rho W)");
    r.per_alpha.push_back({w.alpha().value_or(ChiIndex{}), t, w.meta().bipartition_mask});
    if (t <= 0.0) r.raw_value += t * t;
  }
  r.value = std::sqrt(r.raw_value);
  return r;
}

std::string LocalObservable::name() const {
  switch (kind) {
    case Kind::projector: return "P" + std::to_string(a);
    case Kind::sigma1: return "s1_" + std::to_string(a) + std::to_string(b);
    case Kind::sigma2: return "s2_" + std::to_string(a) + std::to_string(b);
  }
  return "?";
}

std::string LocalObservable::basis() const {
  return kind == Kind::projector ? std::string("Z") : name();
}

Matrix LocalObservable::matrix(int d) const {
  Matrix m = Matrix::Zero(d, d);
  const Complex i(0.0, 1.0);
  switch (kind) {
    case Kind::projector: m(a, a) = 1.0; break;
    case Kind::sigma1: m(a, b) = m(b, a) = 1.0; break;
    case Kind::sigma2:
      m(a, b) = -i;
      m(b, a) = i;
      break;
  }
  return m;
}

std::vector<LocalObservable> local_basis(int d) {
  std::vector<LocalObservable> out;
  for (int a = 0; a < d; ++a) out.push_back({LocalObservable::Kind::projector, a, a});
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      out.push_back({LocalObservable::Kind::sigma1, a, b});
      out.push_back({LocalObservable::Kind::sigma2, a, b});
    }
  }
  return out;
}

MeasurementSchedule local_decomposition(const WitnessOperator& w) {
  return local_decomposition(std::span<const WitnessOperator>(&w, 1));
}

MeasurementSchedule local_decomposition(std::span<const WitnessOperator> family) {
  MeasurementSchedule s;
  std::set<std::pair<std::string, std::string>> observables;
  std::map<std::pair<std::string, std::string>, int> settings;
  for (std::size_t wi = 0; wi < family.size(); ++wi) {
    const auto& w = family[wi];
    require_bipartite(w.space(), "local_decomposition");
    const int da = w.space().factor_dim(0);
    const int db = w.space().factor_dim(1);
    const double scale = std::max(1.0, max_abs(w.matrix()));
    const auto basis_a = local_basis(da);
    const auto basis_b = local_basis(db);
    for (const auto& oa : basis_a) {
      const Matrix ma = oa.matrix(da);
      for (const auto& ob : basis_b) {
        const Matrix prod = kron(ma, ob.matrix(db));
        const double c = w.matrix().cwiseProduct(prod.transpose()).sum().real() /
                         (oa.norm_sq() * ob.norm_sq());
        if (std::abs(c) <= 1e-12 * scale) continue;
        const auto basis_key = std::make_pair(oa.basis(), ob.basis());
        auto [it, inserted] = settings.emplace(basis_key, static_cast<int>(settings.size()));
        observables.emplace(oa.name(), ob.name());
        s.terms.push_back({static_cast<int>(s.terms.size()), static_cast<int>(wi), c, oa, ob,
                           it->second});
      }
    }
  }
  s.observable_count = static_cast<int>(observables.size());
  s.setting_count = static_cast<int>(settings.size());
  return s;
}

Matrix reconstruct(const MeasurementSchedule& schedule, int witness, const HilbertSpace& space) {
  require_bipartite(space, "reconstruct");
  const int da = space.factor_dim(0);
  const int db = space.factor_dim(1);
  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  for (const auto& t : schedule.terms) {
    if (t.witness != witness) continue;
    out += t.coefficient * kron(t.factor_a.matrix(da), t.factor_b.matrix(db));
  }
  return out;
}

void write_schedule_csv(std::ostream& os, const MeasurementSchedule& schedule) {
  os << "term_id,coefficient,factor_A_observable,factor_B_observable,setting_group\n";
  char buf[64];
  for (const auto& t : schedule.terms) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
    os << t.term_id << ',' << buf << ',' << t.factor_a.name() << ',' << t.factor_b.name() << ','
       << t.setting_group << '\n';
  }
}

}  // namespace conc

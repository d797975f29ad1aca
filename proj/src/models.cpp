#include "conc/models.hpp"

#include <cmath>

#include "conc/tensor.hpp"

namespace conc {

IsotropicParams::IsotropicParams(int d_, double f) : d(d_), fidelity(f) {
  if (d < 2) throw ArgumentError("isotropic: d must be >= 2");
  if (!(f >= 0.0 && f <= 1.0)) throw ArgumentError("isotropic: F must lie in [0, 1]");
}

double IsotropicParams::g() const {
  return (1.0 - fidelity) / (d * d - 1.0);
}

double IsotropicParams::h() const {
  return (fidelity * d * d - 1.0) / (d * d - 1.0);
}

PureState phi_plus(int d) {
  if (d < 2) throw ArgumentError("phi_plus: d must be >= 2");
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(HilbertSpace{d, d}, std::move(v));
}

PureState phi_me() {
  return qutrit_initial_state({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
}

DensityOperator isotropic_state(int d, double fidelity) {
  const IsotropicParams p(d, fidelity);
  const Vector phi = phi_plus(d).amplitudes();
  Matrix rho = p.g() * Matrix::Identity(d * d, d * d) + p.h() * phi * phi.adjoint();
  return DensityOperator(HilbertSpace{d, d}, std::move(rho));
}

double isotropic_exact_concurrence(int d, double fidelity) {
  const IsotropicParams p(d, fidelity);
  return std::max(0.0, std::sqrt(2.0 * d / (d - 1.0)) * (fidelity - 1.0 / d));
}

double isotropic_Vi_closed_form(int d, double fidelity) {
  const IsotropicParams p(d, fidelity);
  const double g = p.g(), h = p.h(), dd = d;
  return 2.0 * dd * (dd - 1.0) * (h * h / (dd * dd) - dd * g * g - (2.0 / dd) * g * h);
}

double isotropic_Valpha_sum_closed_form(int d, double fidelity) {
  const IsotropicParams p(d, fidelity);
  const double g = p.g(), h = p.h(), dd = d;
  return 2.0 * dd * (dd - 1.0) * (h * h / (dd * dd) - 2.0 * g * g - (2.0 / dd) * g * h);
}

PureState qutrit_initial_state(const std::array<double, 3>& l) {
  for (double x : l) {
    if (!(x >= 0.0)) throw ArgumentError("qutrit_initial_state: lambdas must be >= 0");
  }
  if (std::abs(l[0] + l[1] + l[2] - 1.0) > 1e-12) {
    throw ArgumentError("qutrit_initial_state: lambdas must sum to 1");
  }
  Vector v = Vector::Zero(9);
  v(0 * 3 + 1) = std::sqrt(l[0]);
  v(1 * 3 + 2) = std::sqrt(l[1]);
  v(2 * 3 + 0) = std::sqrt(l[2]);
  return PureState(HilbertSpace{3, 3}, std::move(v));
}

PureState ghz_state(int n) {
  if (n < 2) throw ArgumentError("ghz_state: need at least two qubits");
  const int dim = 1 << n;
  Vector v = Vector::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return PureState(HilbertSpace(std::vector<int>(n, 2)), std::move(v));
}

PureState w_state(int n) {
  if (n < 2) throw ArgumentError("w_state: need at least two qubits");
  Vector v = Vector::Zero(1 << n);
  for (int k = 0; k < n; ++k) v(1 << k) = 1.0 / std::sqrt(static_cast<double>(n));
  return PureState(HilbertSpace(std::vector<int>(n, 2)), std::move(v));
}

LindbladModel::LindbladModel(double rate) : gamma_rate(rate) {
  if (!(rate > 0.0)) throw ArgumentError("LindbladModel: decay rate must be > 0");
}

Matrix LindbladModel::coupling() {
  Matrix g = Matrix::Zero(3, 3);
  g(1, 0) = std::sqrt(2.0);
  g(2, 1) = 1.0;
  return g;
}

Matrix LindbladModel::jump_a() const {
  return kron(coupling(), Matrix::Identity(3, 3));
}

Matrix LindbladModel::jump_b() const {
  return kron(Matrix::Identity(3, 3), coupling());
}

Matrix lindblad_rhs(const LindbladModel& model, const Matrix& rho) {
  if (rho.rows() != 9 || rho.cols() != 9) throw ArgumentError("lindblad_rhs: expected 9x9 input");
  Matrix out = Matrix::Zero(9, 9);
  for (const Matrix& l : {model.jump_a(), model.jump_b()}) {
    const Matrix ldl = l.adjoint() * l;
    out += 2.0 * l * rho * l.adjoint() - rho * ldl - ldl * rho;
  }
  return 0.5 * model.gamma_rate * out;
}

namespace {

DensityOperator snapshot_state(const HilbertSpace& space, const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-8) {
    throw IntegrationError("evolve: eigenvalue " + std::to_string(ev.minCoeff()) +
                           " below -1e-8; reduce dt");
  }
  if (ev.minCoeff() < 0.0) {
    ev = ev.cwiseMax(0.0);
    h = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  }
  return DensityOperator(space, std::move(h));
}

}  // namespace

std::vector<Snapshot> evolve(const LindbladModel& model, const DensityOperator& rho0,
                             double t_max, double dt, int stride) {
  if (!(rho0.space() == HilbertSpace{3, 3})) throw ArgumentError("evolve: expected a 3x3 system");
  if (!(dt > 0.0)) throw ArgumentError("evolve: dt must be > 0");
  if (!(t_max >= 0.0)) throw ArgumentError("evolve: t_max must be >= 0");
  if (stride < 1) throw ArgumentError("evolve: stride must be >= 1");
  const long steps = std::lround(t_max / dt);
  const double tr0 = rho0.trace();
  std::vector<Snapshot> out;
  out.push_back({0.0, rho0});
  Matrix rho = rho0.matrix();
  for (long n = 1; n <= steps; ++n) {
    const Matrix k1 = lindblad_rhs(model, rho);
    const Matrix k2 = lindblad_rhs(model, rho + 0.5 * dt * k1);
    const Matrix k3 = lindblad_rhs(model, rho + 0.5 * dt * k2);
    const Matrix k4 = lindblad_rhs(model, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = (0.5 * (rho + rho.adjoint())).eval();
    const double drift = std::abs(rho.trace().real() - tr0);
    if (drift > 1e-6 || !rho.allFinite()) {
      throw IntegrationError("evolve: trace drift " + std::to_string(drift) +
                             " exceeds 1e-6; reduce dt");
    }
    if (n % stride == 0 || n == steps) out.push_back({n * dt, snapshot_state(rho0.space(), rho)});
  }
  return out;
}

double wootters_concurrence(const DensityOperator& rho) {
  if (!(rho.space() == HilbertSpace{2, 2})) {
    throw ArgumentError("wootters_concurrence: expected a 2x2 system");
  }
  Matrix sy = Matrix::Zero(2, 2);
  sy(0, 1) = Complex(0.0, -1.0);
  sy(1, 0) = Complex(0.0, 1.0);
  const Matrix yy = kron(sy, sy);
  // λ_i are the singular values of √ρ (σ_y⊗σ_y) √ρ*, which avoids square roots of
  // tiny eigenvalues of ρρ̃.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const RealVector sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix root = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
  const Matrix m = root * yy * root.conjugate();
  const RealVector l = Eigen::JacobiSVD<Matrix>(m).singularValues();
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

}  // namespace conc

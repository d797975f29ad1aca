#include "conc/twocopy.hpp"

#include <array>
#include <cmath>

#include "conc/tensor.hpp"

namespace conc {

namespace {

// Single-copy basis indices of (xp, xq, yp, yq).
std::array<int, 4> block_basis(const ChiIndex& a, int d_b) {
  return {a.x * d_b + a.p, a.x * d_b + a.q, a.y * d_b + a.p, a.y * d_b + a.q};
}

Matrix build_two_qubit_V(int which) {
  return build_V(HilbertSpace{2, 2}, which).matrix();
}

}  // namespace

std::string ChiIndex::label() const {
  return "x" + std::to_string(x) + "y" + std::to_string(y) + "p" + std::to_string(p) + "q" +
         std::to_string(q);
}

void validate_chi(const ChiIndex& a, int d_a, int d_b) {
  if (!(0 <= a.x && a.x < a.y && a.y < d_a && 0 <= a.p && a.p < a.q && a.q < d_b)) {
    throw ArgumentError("invalid chi index " + a.label() + " for local dims " +
                        std::to_string(d_a) + "x" + std::to_string(d_b));
  }
}

void require_bipartite(const HilbertSpace& space, const char* what) {
  if (!space.is_bipartite()) {
    throw ArgumentError(std::string(what) + ": expected a bipartite space, got " +
                        space.to_string());
  }
}

TwoCopyOperator::TwoCopyOperator(HilbertSpace joint_space, Matrix matrix)
    : space_(std::move(joint_space)), matrix_(std::move(matrix)) {
  const int n = space_.total_dim() * space_.total_dim();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ArgumentError("TwoCopyOperator: matrix shape does not match two copies of " +
                        space_.to_string());
  }
  if (!is_hermitian(matrix_)) throw ValidationError("TwoCopyOperator: matrix is not Hermitian");
}

std::vector<int> TwoCopyOperator::two_copy_dims() const {
  return space_.concat(space_).factor_dims();
}

VWeights VWeights::only(int which) {
  if (which == 1) return {1.0, 0.0};
  if (which == 2) return {0.0, 1.0};
  throw ArgumentError("V index must be 1 or 2");
}

void VWeights::validate() const {
  if (c1 < 0.0 || c2 < 0.0 || std::abs(c1 + c2 - 1.0) > tol::weights) {
    throw ArgumentError("V weights must satisfy c1, c2 >= 0 and c1 + c2 = 1");
  }
}

Matrix reorder_aabb_to_abab(const Matrix& op_aabb, int d_a, int d_b) {
  const std::array<int, 4> dims{d_a, d_a, d_b, d_b};
  // Output (A1, B1, A2, B2) = input factors (0, 2, 1, 3).
  const std::array<int, 4> perm{0, 2, 1, 3};
  return permute_factors(op_aabb, dims, perm);
}

TwoCopyOperator build_A(const HilbertSpace& space) {
  require_bipartite(space, "build_A");
  const int da = space.factor_dim(0);
  const int db = space.factor_dim(1);
  const Matrix op = 4.0 * kron(projector_sym_antisym(da, -1), projector_sym_antisym(db, -1));
  return TwoCopyOperator(space, reorder_aabb_to_abab(op, da, db));
}

std::vector<ChiIndex> enumerate_chi_indices(const HilbertSpace& space) {
  require_bipartite(space, "enumerate_chi");
  const int da = space.factor_dim(0);
  const int db = space.factor_dim(1);
  std::vector<ChiIndex> out;
  for (int x = 0; x < da; ++x)
    for (int y = x + 1; y < da; ++y)
      for (int p = 0; p < db; ++p)
        for (int q = p + 1; q < db; ++q) out.push_back({x, y, p, q});
  return out;
}

ChiVector chi_vector(const HilbertSpace& space, const ChiIndex& a) {
  require_bipartite(space, "chi_vector");
  const int da = space.factor_dim(0);
  const int db = space.factor_dim(1);
  validate_chi(a, da, db);
  const int n = space.total_dim();
  Vector v = Vector::Zero(n * n);
  auto at = [&](int a1, int b1, int a2, int b2) -> Complex& {
    return v((a1 * db + b1) * n + (a2 * db + b2));
  };
  at(a.x, a.p, a.y, a.q) += 1.0;
  at(a.x, a.q, a.y, a.p) -= 1.0;
  at(a.y, a.p, a.x, a.q) -= 1.0;
  at(a.y, a.q, a.x, a.p) += 1.0;
  return {a, std::move(v)};
}

std::vector<ChiVector> enumerate_chi(const HilbertSpace& space) {
  std::vector<ChiVector> out;
  for (const auto& a : enumerate_chi_indices(space)) out.push_back(chi_vector(space, a));
  return out;
}

TwoCopyOperator build_V(const HilbertSpace& space, int which) {
  require_bipartite(space, "build_V");
  const int da = space.factor_dim(0);
  const int db = space.factor_dim(1);
  Matrix op;
  if (which == 1) {
    op = 4.0 * kron(Matrix(projector_sym_antisym(da, -1) - projector_sym_antisym(da, +1)),
                    projector_sym_antisym(db, -1));
  } else if (which == 2) {
    op = 4.0 * kron(projector_sym_antisym(da, -1),
                    Matrix(projector_sym_antisym(db, -1) - projector_sym_antisym(db, +1)));
  } else {
    throw ArgumentError("build_V: which must be 1 or 2");
  }
  return TwoCopyOperator(space, reorder_aabb_to_abab(op, da, db));
}

std::pair<Matrix, Matrix> mask_projector(const HilbertSpace& space, const ChiIndex& a) {
  require_bipartite(space, "mask_projector");
  validate_chi(a, space.factor_dim(0), space.factor_dim(1));
  Matrix ma = Matrix::Zero(space.factor_dim(0), space.factor_dim(0));
  Matrix mb = Matrix::Zero(space.factor_dim(1), space.factor_dim(1));
  ma(a.x, a.x) = ma(a.y, a.y) = 1.0;
  mb(a.p, a.p) = mb(a.q, a.q) = 1.0;
  return {std::move(ma), std::move(mb)};
}

Matrix two_copy_mask(const HilbertSpace& space, const ChiIndex& a) {
  const auto [ma, mb] = mask_projector(space, a);
  // Written in (A1, A2, B1, B2) order, then reordered.
  const Matrix aabb = kron(kron(ma, ma), kron(mb, mb));
  return reorder_aabb_to_abab(aabb, space.factor_dim(0), space.factor_dim(1));
}

TwoCopyOperator build_V_alpha(const HilbertSpace& space, const ChiIndex& a,
                              const VWeights& w) {
  w.validate();
  const Matrix m = two_copy_mask(space, a);
  const Matrix v = w.c1 * build_V(space, 1).matrix() + w.c2 * build_V(space, 2).matrix();
  return TwoCopyOperator(space, m * v * m);
}

Complex expectation(const TwoCopyOperator& v, const Matrix& rho, const Matrix& sigma) {
  const int n = v.joint_space().total_dim();
  if (rho.rows() != n || sigma.rows() != n) throw ArgumentError("expectation: space mismatch");
  return kron(rho, sigma).cwiseProduct(v.matrix().transpose()).sum();
}

Matrix partial_trace_second_copy(const TwoCopyOperator& v, const Matrix& sigma) {
  const int n = v.joint_space().total_dim();
  if (sigma.rows() != n || sigma.cols() != n) {
    throw ArgumentError("partial_trace_second_copy: space mismatch");
  }
  const Matrix& vm = v.matrix();
  Matrix out = Matrix::Zero(n, n);
  // [tr₂((I⊗σ)V)]_ab = Σ_{c,e} σ_ce V_(a,e),(b,c)
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      for (int e = 0; e < n; ++e) {
        const Complex s = sigma(c, e);
        if (s == Complex(0.0)) continue;
        for (int a = 0; a < n; ++a) out(a, b) += s * vm(a * n + e, b * n + c);
      }
  return out;
}

Matrix compress(const Matrix& op, const HilbertSpace& space, const ChiIndex& a) {
  require_bipartite(space, "compress");
  validate_chi(a, space.factor_dim(0), space.factor_dim(1));
  const auto idx = block_basis(a, space.factor_dim(1));
  Matrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = op(idx[i], idx[j]);
  return out;
}

Matrix embed(const Matrix& block, const HilbertSpace& space, const ChiIndex& a) {
  require_bipartite(space, "embed");
  validate_chi(a, space.factor_dim(0), space.factor_dim(1));
  const auto idx = block_basis(a, space.factor_dim(1));
  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(idx[i], idx[j]) = block(i, j);
  return out;
}

Matrix two_qubit_V(const VWeights& w) {
  w.validate();
  static const Matrix v1 = build_two_qubit_V(1);
  static const Matrix v2 = build_two_qubit_V(2);
  return w.c1 * v1 + w.c2 * v2;
}

double v_alpha_expectation(const Matrix& rho, const Matrix& sigma, const HilbertSpace& space,
                           const ChiIndex& a, const VWeights& w) {
  const Matrix rc = compress(rho, space, a);
  const Matrix sc = compress(sigma, space, a);
  const Complex t = kron(rc, sc).cwiseProduct(two_qubit_V(w).transpose()).sum();
  return real_checked(t, "v_alpha_expectation");
}

Matrix v_alpha_partial_trace(const Matrix& sigma, const HilbertSpace& space, const ChiIndex& a,
                             const VWeights& w) {
  const Matrix sc = compress(sigma, space, a);
  const TwoCopyOperator v(HilbertSpace{2, 2}, two_qubit_V(w));
  return embed(partial_trace_second_copy(v, sc), space, a);
}

Complex chi_overlap(const ChiIndex& a, int d_b, const Eigen::Ref<const Vector>& psi,
                    const Eigen::Ref<const Vector>& phi) {
  const int xp = a.x * d_b + a.p;
  const int xq = a.x * d_b + a.q;
  const int yp = a.y * d_b + a.p;
  const int yq = a.y * d_b + a.q;
  return psi(xp) * phi(yq) - psi(xq) * phi(yp) - psi(yp) * phi(xq) + psi(yq) * phi(xp);
}

}  // namespace conc

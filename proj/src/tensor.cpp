#include "conc/tensor.hpp"

#include <sstream>

#include "conc/hilbert_space.hpp"

namespace conc {

HilbertSpace::HilbertSpace(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw ArgumentError("HilbertSpace: at least one factor required");
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw ArgumentError("HilbertSpace: every factor dimension must be >= 2");
    total_ *= d;
  }
}

HilbertSpace HilbertSpace::concat(const HilbertSpace& other) const {
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return HilbertSpace(std::move(dims));
}

HilbertSpace HilbertSpace::select(std::span<const int> factors) const {
  std::vector<int> dims;
  dims.reserve(factors.size());
  for (int k : factors) {
    if (k < 0 || k >= static_cast<int>(dims_.size())) {
      throw ArgumentError("HilbertSpace::select: invalid factor index");
    }
    dims.push_back(dims_[k]);
  }
  return HilbertSpace(std::move(dims));
}

std::string HilbertSpace::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? "x" : "") << dims_[k];
  return os.str();
}

std::vector<int> factor_permutation_map(std::span<const int> dims, std::span<const int> perm) {
  const int nf = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != nf) {
    throw ArgumentError("factor permutation: size mismatch");
  }
  std::vector<char> seen(nf, 0);
  for (int k : perm) {
    if (k < 0 || k >= nf || seen[k]) throw ArgumentError("factor permutation: not a permutation");
    seen[k] = 1;
  }
  // Input strides (row-major).
  std::vector<int> in_stride(nf, 1);
  for (int k = nf - 2; k >= 0; --k) in_stride[k] = in_stride[k + 1] * dims[k + 1];
  int total = 1;
  for (int d : dims) total *= d;

  std::vector<int> out_dims(nf);
  for (int k = 0; k < nf; ++k) out_dims[k] = dims[perm[k]];

  std::vector<int> map(total);
  std::vector<int> digit(nf, 0);
  for (int out = 0; out < total; ++out) {
    int in = 0;
    for (int k = 0; k < nf; ++k) in += digit[k] * in_stride[perm[k]];
    map[out] = in;
    for (int k = nf - 1; k >= 0; --k) {
      if (++digit[k] < out_dims[k]) break;
      digit[k] = 0;
    }
  }
  return map;
}

}  // namespace conc

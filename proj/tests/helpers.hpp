#pragma once

#include "conc/qstate.hpp"
#include "conc/tensor.hpp"

namespace testing {

inline double max_diff(const conc::Matrix& a, const conc::Matrix& b) {
  return conc::max_abs(a - b);
}

inline conc::DensityOperator pure_density(const conc::PureState& psi) {
  return conc::DensityOperator(psi);
}

// Product of computational basis states on a bipartite space.
inline conc::PureState basis_product(int da, int db, int i, int j) {
  conc::Vector v = conc::Vector::Zero(da * db);
  v(i * db + j) = 1.0;
  return conc::PureState(conc::HilbertSpace{da, db}, v);
}

}  // namespace testing

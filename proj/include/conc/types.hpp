#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace conc {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = CMatrix<double>;
using Vector = CVector<double>;
using RealVector = Eigen::VectorXd;

// Input violates a documented precondition (bad index, wrong shape, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state or operator fails its physical validity checks.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A witness cannot be normalized (C(σ) or ALB_α(σ) vanishes, or no bound supplied).
class UnusableWitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Residues that indicate a bug rather than bad input, e.g. complex-valued traces of
// Hermitian products.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double eigen_clamp = 1e-10;
inline constexpr double trace_imag = 1e-12;
inline constexpr double trace_excess = 1e-10;
inline constexpr double eigen_cutoff = 1e-12;
inline constexpr double isometry = 1e-10;
inline constexpr double trace_residue = 1e-10;
inline constexpr double weights = 1e-12;
inline constexpr double norm_excess = 1e-12;
inline constexpr double witness_normalizer = 1e-12;
}  // namespace tol

// Real part of a scalar that must be real up to `tol`; throws otherwise.
inline double real_checked(Complex z, const char* what, double tol = tol::trace_residue) {
  if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z.real()))) {
    throw InternalConsistencyError(std::string(what) + ": imaginary residue " +
                                   std::to_string(z.imag()));
  }
  return z.real();
}

}  // namespace conc

#pragma once

// Text state files:
//   line 1   `qdm 1` (density operator), `qsv 1` (pure state) or `qop 1` (operator)
//   line 2   factor dimensions separated by spaces
//   rest     rows of `re:im` tokens, 17 significant digits; one row for `qsv`.

#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

#include "conc/qstate.hpp"

namespace conc {

using StateFile = std::variant<DensityOperator, PureState>;

// Raw operator with the factor list it acts on (no validity checks beyond shape).
struct OperatorFile {
  std::vector<int> factor_dims;
  Matrix matrix;
};

void write_state(std::ostream& os, const DensityOperator& rho);
void write_state(std::ostream& os, const PureState& psi);
void write_operator(std::ostream& os, const Matrix& op, const std::vector<int>& factor_dims);

void write_state(const std::filesystem::path& path, const DensityOperator& rho);
void write_state(const std::filesystem::path& path, const PureState& psi);
void write_operator(const std::filesystem::path& path, const Matrix& op,
                    const std::vector<int>& factor_dims);

StateFile read_state(std::istream& is);
StateFile read_state(const std::filesystem::path& path);
OperatorFile read_operator(std::istream& is);
OperatorFile read_operator(const std::filesystem::path& path);

// Density operator view of either kind of state file.
DensityOperator as_density(const StateFile& s);

}  // namespace conc

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace conc::cli {

// Bad flag combination detected after parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IsotropicOptions {
  int d = 4;
  double f_min = 0.0;
  double f_max = 1.0;
  int steps = 200;
  std::string out;         // empty: stdout
  bool emit_plot = false;  // writes <out>.gp
};

struct QutritDecayOptions {
  std::array<double, 3> lambdas{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double gamma = 1.0;
  double t_max = 3.0;
  double dt = 1e-3;
  int stride = 10;
  int which = 2;  // V_(i) behind W_σ
  std::array<double, 2> weights{0.5, 0.5};
  std::string out;
};

struct BoundsOptions {
  std::string state;
  std::string method;  // alb | sumsq | two-copy | two-copy-alpha | witness | multi
  std::string sigma;
  std::optional<std::array<double, 2>> weights;
  std::string alpha;   // "x,y,p,q" or empty
  int which = 2;
  bool aggregate = false;  // witness: W_σ instead of the W_σα family
  std::optional<double> c_sigma;
  std::string out;
};

struct WitnessExportOptions {
  std::string sigma;
  std::string alpha = "all";
  int which = 2;
  std::optional<std::array<double, 2>> weights;
  std::string out_prefix = "witness";
};

struct SelftestOptions {
  std::uint64_t seed = 42;
  bool full = false;
};

void cmd_isotropic(const IsotropicOptions& o, std::ostream& out);
void cmd_qutrit_decay(const QutritDecayOptions& o, std::ostream& out);
void cmd_bounds(const BoundsOptions& o, std::ostream& out);
void cmd_witness_export(const WitnessExportOptions& o, std::ostream& out);
// Returns true iff every check passed; the report goes to `out`.
bool cmd_selftest(const SelftestOptions& o, std::ostream& out, std::ostream& err);

// Parses argv and dispatches. Exit codes: 0 success, 1 computation or validation
// failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conc::cli

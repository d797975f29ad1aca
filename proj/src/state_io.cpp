#include "conc/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace conc {

namespace {

std::string format_entry(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g:%.17g", z.real(), z.imag());
  return buf;
}

void write_dims(std::ostream& os, const std::vector<int>& dims) {
  for (std::size_t k = 0; k < dims.size(); ++k) os << (k ? " " : "") << dims[k];
  os << '\n';
}

void write_rows(std::ostream& os, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_entry(m(i, j));
    os << '\n';
  }
}

double parse_real(const std::string& s, const std::string& token) {
  if (s.empty()) throw FormatError("malformed entry '" + token + "'");
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size()) throw FormatError("malformed entry '" + token + "'");
  if (!std::isfinite(v)) throw FormatError("non-finite entry '" + token + "'");
  return v;
}

Complex parse_entry(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos || token.find(':', colon + 1) != std::string::npos) {
    throw FormatError("entry '" + token + "' is not of the form re:im");
  }
  return {parse_real(token.substr(0, colon), token), parse_real(token.substr(colon + 1), token)};
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

struct Header {
  std::string kind;
  std::vector<int> dims;
  int total = 1;
};

Header read_header(std::istream& is) {
  Header h;
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty state file");
  const auto magic = split(line);
  if (magic.size() != 2 || magic[1] != "1" ||
      (magic[0] != "qdm" && magic[0] != "qsv" && magic[0] != "qop")) {
    throw FormatError("malformed header '" + line + "'");
  }
  h.kind = magic[0];
  if (!std::getline(is, line)) throw FormatError("missing dimension line");
  for (const auto& t : split(line)) {
    char* end = nullptr;
    const long d = std::strtol(t.c_str(), &end, 10);
    if (*end != '\0' || d < 2 || d > 4096) throw FormatError("invalid factor dimension '" + t + "'");
    h.dims.push_back(static_cast<int>(d));
    h.total *= static_cast<int>(d);
  }
  if (h.dims.empty()) throw FormatError("dimension line lists no factors");
  return h;
}

Matrix read_rows(std::istream& is, int rows, int cols) {
  Matrix m(rows, cols);
  std::string line;
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(is, line)) {
      throw FormatError("expected " + std::to_string(rows) + " rows, found " + std::to_string(i));
    }
    const auto tokens = split(line);
    if (static_cast<int>(tokens.size()) != cols) {
      throw FormatError("row " + std::to_string(i) + " has " + std::to_string(tokens.size()) +
                        " entries, expected " + std::to_string(cols));
    }
    for (int j = 0; j < cols; ++j) m(i, j) = parse_entry(tokens[j]);
  }
  while (std::getline(is, line)) {
    if (!split(line).empty()) throw FormatError("trailing data after matrix rows");
  }
  return m;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path.string());
  return f;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw FormatError("cannot write " + path.string());
  return f;
}

}  // namespace

void write_state(std::ostream& os, const DensityOperator& rho) {
  os << "qdm 1\n";
  write_dims(os, rho.space().factor_dims());
  write_rows(os, rho.matrix());
}

void write_state(std::ostream& os, const PureState& psi) {
  os << "qsv 1\n";
  write_dims(os, psi.space().factor_dims());
  write_rows(os, psi.amplitudes().transpose());
}

void write_operator(std::ostream& os, const Matrix& op, const std::vector<int>& factor_dims) {
  int total = 1;
  for (int d : factor_dims) total *= d;
  if (op.rows() != total || op.cols() != total) {
    throw ArgumentError("write_operator: matrix shape does not match factor dims");
  }
  os << "qop 1\n";
  write_dims(os, factor_dims);
  write_rows(os, op);
}

void write_state(const std::filesystem::path& path, const DensityOperator& rho) {
  auto f = open_out(path);
  write_state(f, rho);
}

void write_state(const std::filesystem::path& path, const PureState& psi) {
  auto f = open_out(path);
  write_state(f, psi);
}

void write_operator(const std::filesystem::path& path, const Matrix& op,
                    const std::vector<int>& factor_dims) {
  auto f = open_out(path);
  write_operator(f, op, factor_dims);
}

StateFile read_state(std::istream& is) {
  const Header h = read_header(is);
  if (h.kind == "qop") throw FormatError("operator file given where a state was expected");
  HilbertSpace space(h.dims);
  if (h.kind == "qsv") {
    Matrix row = read_rows(is, 1, h.total);
    return PureState(space, row.row(0).transpose());
  }
  return DensityOperator(space, read_rows(is, h.total, h.total));
}

StateFile read_state(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_state(f);
}

OperatorFile read_operator(std::istream& is) {
  Header h = read_header(is);
  if (h.kind != "qop") throw FormatError("expected an operator file (qop 1)");
  return {std::move(h.dims), read_rows(is, h.total, h.total)};
}

OperatorFile read_operator(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_operator(f);
}

DensityOperator as_density(const StateFile& s) {
  if (const auto* psi = std::get_if<PureState>(&s)) return DensityOperator(*psi);
  return std::get<DensityOperator>(s);
}

}  // namespace conc

// Copyright 2026 The qpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpc/program.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace qpc {

Eigen::Vector3d RotationGate::angles() const {
  const double denom = std::ldexp(1.0, precision);
  Eigen::Vector3d theta;
  for (int a = 0; a < 3; ++a) {
    theta[a] = 2.0 * kPi * static_cast<double>(k[a]) / denom;
  }
  return theta;
}

void validate(const RotationGate& g) {
  if (g.precision < 1 || g.precision > kMaxPrecision) {
    throw Error("rotation precision must be in [1, " +
                std::to_string(kMaxPrecision) + "], got " +
                std::to_string(g.precision));
  }
  if (g.target < 0) throw Error("negative qubit index");
  const std::uint64_t bound = std::uint64_t{1} << g.precision;
  for (auto k : g.k) {
    if (k >= bound) {
      throw Error("angle numerator " + std::to_string(k) + " >= 2^" +
                  std::to_string(g.precision));
    }
  }
}

void validate(const CZGate& g) {
  if (g.control < 0 || g.target < 0) throw Error("negative qubit index");
  if (g.control == g.target) throw Error("CZ control equals target");
}

int max_qubit(const Gate& g) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RotationGate>) {
          return x.target;
        } else {
          return std::max(x.control, x.target);
        }
      },
      g);
}

Program::Program(std::vector<Gate> gates) : gates_(std::move(gates)) {
  if (gates_.empty()) throw Error("program must contain at least one gate");
  for (const auto& g : gates_) {
    std::visit([](const auto& x) { validate(x); }, g);
    width_ = std::max(width_, max_qubit(g) + 1);
  }
}

Program concat(const Program& first, const Program& second) {
  std::vector<Gate> gates = first.gates();
  gates.insert(gates.end(), second.gates().begin(), second.gates().end());
  return Program(std::move(gates));
}

std::uint64_t gate_size(const Gate& g) {
  if (const auto* r = std::get_if<RotationGate>(&g)) {
    return static_cast<std::uint64_t>(r->precision);
  }
  return 1;
}

std::uint64_t program_size(const Program& p) {
  std::uint64_t total = 0;
  for (const auto& g : p.gates()) total += gate_size(g);
  return total;
}

GateCensus census(const Program& p) {
  GateCensus c;
  for (const auto& g : p.gates()) {
    if (std::holds_alternative<RotationGate>(g)) {
      ++c.rotations;
    } else {
      ++c.cz;
    }
  }
  return c;
}

namespace {

std::int64_t parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size()) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  return v;
}

Gate parse_line(const std::vector<std::string>& toks, int line) {
  const std::string& op = toks[0];
  if (op == "CZ") {
    if (toks.size() != 3) throw ParseError(line, "CZ takes 2 operands");
    CZGate g{static_cast<int>(parse_int(toks[1], line)),
             static_cast<int>(parse_int(toks[2], line))};
    try {
      validate(g);
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
    return g;
  }
  if (op == "R") {
    if (toks.size() != 6) throw ParseError(line, "R takes 5 operands");
    RotationGate g;
    g.target = static_cast<int>(parse_int(toks[1], line));
    g.precision = static_cast<int>(parse_int(toks[5], line));
    for (int a = 0; a < 3; ++a) {
      const auto k = parse_int(toks[2 + a], line);
      if (k < 0) throw ParseError(line, "angle numerator must be >= 0");
      g.k[a] = static_cast<std::uint64_t>(k);
    }
    try {
      validate(g);
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
    return g;
  }
  throw ParseError(line, "unknown gate '" + op + "'");
}

}  // namespace

Program parse_program(std::istream& in) {
  std::vector<Gate> gates;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ss(raw);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    gates.push_back(parse_line(toks, line));
  }
  if (gates.empty()) throw ParseError(0, "empty program");
  return Program(std::move(gates));
}

Program parse_program(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_program(in);
}

Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_program(in);
}

std::string render_program(const Program& p) {
  std::ostringstream out;
  for (const auto& g : p.gates()) {
    if (const auto* r = std::get_if<RotationGate>(&g)) {
      out << "R " << r->target << ' ' << r->k[0] << ' ' << r->k[1] << ' '
          << r->k[2] << ' ' << r->precision << '\n';
    } else {
      const auto& cz = std::get<CZGate>(g);
      out << "CZ " << cz.control << ' ' << cz.target << '\n';
    }
  }
  return out.str();
}

UnitaryDescriptor::UnitaryDescriptor(int n_, CMatrix m) : n(n_), matrix(std::move(m)) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw Error("dense unitary limited to 1.." + std::to_string(kMaxDenseQubits) +
                " qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw Error("unitary has wrong dimension for n = " + std::to_string(n));
  }
  const CMatrix gram = matrix.adjoint() * matrix;
  if (max_abs_diff(gram, CMatrix::Identity(dim, dim)) > 1e-10) {
    throw Error("matrix is not unitary");
  }
}

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  const Complex i(0, 1);
  Mat2 m;
  m << 0, -i, i, 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 rotation_matrix(const Eigen::Vector3d& theta) {
  const double norm = theta.norm();
  if (norm == 0.0) return Mat2::Identity();
  const Eigen::Vector3d axis = theta / norm;
  const Mat2 n_sigma =
      axis[0] * pauli_x() + axis[1] * pauli_y() + axis[2] * pauli_z();
  return std::cos(norm) * Mat2::Identity() -
         Complex(0, std::sin(norm)) * n_sigma;
}

Mat2 rotation_matrix(const RotationGate& g) { return rotation_matrix(g.angles()); }

Mat4 cz_matrix() {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -1;
  return m;
}

CMatrix embed(const Mat2& op, int qubit, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index bit = Eigen::Index{1} << (n - 1 - qubit);
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int b = (col & bit) ? 1 : 0;
    const Eigen::Index base = col & ~bit;
    out(base, col) = op(0, b);
    out(base | bit, col) = op(1, b);
  }
  return out;
}

CMatrix gate_matrix(const Gate& g, int n) {
  if (max_qubit(g) >= n) throw Error("gate index out of range");
  if (const auto* r = std::get_if<RotationGate>(&g)) {
    return embed(rotation_matrix(*r), r->target, n);
  }
  const auto& cz = std::get<CZGate>(g);
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index a = Eigen::Index{1} << (n - 1 - cz.control);
  const Eigen::Index b = Eigen::Index{1} << (n - 1 - cz.target);
  CMatrix out = CMatrix::Identity(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & a) && (i & b)) out(i, i) = -1;
  }
  return out;
}

UnitaryDescriptor program_unitary(const Program& p, int n) {
  if (n < p.width()) throw Error("register narrower than program width");
  if (n > kMaxDenseQubits) {
    throw Error("program too wide for a dense unitary (n = " +
                std::to_string(n) + ")");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const auto& g : p.gates()) u = gate_matrix(g, n) * u;
  return UnitaryDescriptor(n, std::move(u));
}

UnitaryDescriptor program_unitary(const Program& p) {
  return program_unitary(p, p.width());
}

UnitaryDescriptor pad_with_identity(const UnitaryDescriptor& u, int n) {
  if (n < u.n) throw Error("cannot pad to a narrower register");
  if (n == u.n) return u;
  const Eigen::Index extra = Eigen::Index{1} << (n - u.n);
  const Eigen::Index dim = u.matrix.rows();
  CMatrix out = CMatrix::Zero(dim * extra, dim * extra);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      out.block(r * extra, c * extra, extra, extra).diagonal().setConstant(u.matrix(r, c));
    }
  }
  return UnitaryDescriptor(n, std::move(out));
}

double program_fidelity(const UnitaryDescriptor& u, const Program& p) {
  const int n = std::max(u.n, p.width());
  const UnitaryDescriptor target = pad_with_identity(u, n);
  const UnitaryDescriptor encoded = program_unitary(p, n);
  return std::min(1.0, trace_fidelity(target.matrix, encoded.matrix));
}

}  // namespace qpc

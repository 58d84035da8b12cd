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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpc/types.hpp"

namespace qpc {

/// Single-qubit rotation exp(-i theta . sigma) with dyadic components
/// theta_a = 2*pi*k_a / 2^m. The gate's size is its precision m.
struct RotationGate {
  int target = 0;
  std::array<std::uint64_t, 3> k{0, 0, 0};
  int precision = 1;

  /// (theta_x, theta_y, theta_z) in radians.
  Eigen::Vector3d angles() const;

  friend bool operator==(const RotationGate&, const RotationGate&) = default;
};

struct CZGate {
  int control = 0;
  int target = 1;

  friend bool operator==(const CZGate&, const CZGate&) = default;
};

using Gate = std::variant<RotationGate, CZGate>;

// Upper bound on m so that 2^m fits comfortably in 64 bits.
inline constexpr int kMaxPrecision = 62;

/// Throws Error if the gate violates its range invariants.
void validate(const RotationGate& g);
void validate(const CZGate& g);

/// Highest qubit index touched by the gate.
int max_qubit(const Gate& g);

/// Ordered, non-empty gate list. Immutable after construction.
class Program {
 public:
  explicit Program(std::vector<Gate> gates);

  const std::vector<Gate>& gates() const { return gates_; }
  int width() const { return width_; }
  std::size_t gate_count() const { return gates_.size(); }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<Gate> gates_;
  int width_ = 0;
};

/// Sequential composition: `first` runs, then `second`.
Program concat(const Program& first, const Program& second);

std::uint64_t gate_size(const Gate& g);
std::uint64_t program_size(const Program& p);

struct GateCensus {
  std::size_t rotations = 0;
  std::size_t cz = 0;
};
GateCensus census(const Program& p);

// .qprog text format
Program parse_program(std::string_view text);
Program parse_program(std::istream& in);
Program load_program(const std::string& path);
std::string render_program(const Program& p);

/// Dense unitary on n qubits (qubit 0 is the most significant index bit).
struct UnitaryDescriptor {
  int n = 0;
  CMatrix matrix;

  UnitaryDescriptor(int n, CMatrix m);
};

inline constexpr int kMaxDenseQubits = 12;

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// Closed form exp(-i theta . sigma) = cos|theta| I - i sin|theta| (n . sigma).
Mat2 rotation_matrix(const Eigen::Vector3d& theta);
Mat2 rotation_matrix(const RotationGate& g);
Mat4 cz_matrix();

/// Lifts a single-qubit operator to the full n-qubit space.
CMatrix embed(const Mat2& op, int qubit, int n);
/// Dense matrix of a gate on an n-qubit register.
CMatrix gate_matrix(const Gate& g, int n);

UnitaryDescriptor program_unitary(const Program& p);
UnitaryDescriptor program_unitary(const Program& p, int n);

/// U (x) identity on `extra` trailing qubits.
UnitaryDescriptor pad_with_identity(const UnitaryDescriptor& u, int n);

/// Normalized trace overlap |Tr(A^dagger B)| / d.
template <typename A, typename B>
double trace_fidelity(const Eigen::MatrixBase<A>& a,
                      const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw Error("fidelity: dimension mismatch");
  }
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

/// Fidelity between a target unitary and the unitary a program encodes; the
/// narrower of the two is padded with identity.
double program_fidelity(const UnitaryDescriptor& u, const Program& p);

}  // namespace qpc

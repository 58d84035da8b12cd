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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpc/program.hpp"
#include "qpc/statevector.hpp"

namespace qpc::oneway {

/// Measure `vertex` in the equatorial basis {|0> +- e^{i phi'}|1>}, where
/// phi' = (-1)^s * angle + t * pi and s, t are the outcome parities of the
/// two dependency sets. Outcome 0 is the "+" projector.
struct MeasurementStep {
  int vertex = 0;
  double angle = 0.0;
  std::vector<int> s_deps;
  std::vector<int> t_deps;
};

/// Pauli correction X^x Z^z applied to an output before readout.
struct Byproduct {
  int vertex = 0;
  std::vector<int> x_deps;
  std::vector<int> z_deps;
};

/// Graph state plus an ordered adaptive measurement schedule. Inputs start
/// in the supplied basis state, every other vertex in |+>; each edge is a CZ.
struct MeasurementPattern {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::vector<MeasurementStep> steps;
  std::vector<Byproduct> byproducts;  // one per output, same order

  std::size_t wires() const { return inputs.size(); }
};

/// Throws Error on any structural violation, including a dependency on a
/// vertex that is not measured strictly earlier.
void validate(const MeasurementPattern& pat);

/// Euler angles with U = e^{i delta} Rz(gamma) Rx(beta) Rz(alpha).
struct EulerZXZ {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};
EulerZXZ euler_zxz(const Mat2& u);
Mat2 rz(double angle);
Mat2 rx(double angle);

/// Lowers each rotation to a four-measurement chain segment and each CZ to
/// an edge between the two wires' current frontier vertices.
MeasurementPattern compile_to_pattern(const Program& p);

enum class BranchPolicy { EnumerateAll, SeededRandom };

/// Outcome distribution on the readout wires (indices into `outputs`).
Distribution simulate_pattern(const MeasurementPattern& pat, std::string_view input,
                              const ReadoutSpec& readout,
                              BranchPolicy policy = BranchPolicy::EnumerateAll,
                              std::uint64_t seed = 0);

/// Corrected output state (wire order) for one seeded branch.
PureState run_branch(const MeasurementPattern& pat, std::string_view input,
                     std::uint64_t seed);

/// Set of branches sharing a classical record that the rest of the pattern
/// can observe and an identical (up to phase) quantum state; such branches
/// have identical futures, so enumerating classes enumerates every branch.
struct BranchClass {
  double weight = 0.0;
  double branches = 0.0;  // number of outcome records merged here
  Distribution output;
};

inline constexpr std::size_t kMaxBranchClasses = std::size_t{1} << 20;

std::vector<BranchClass> enumerate_branches(const MeasurementPattern& pat,
                                            std::string_view input,
                                            const ReadoutSpec& readout);

/// True iff every branch yields the same corrected output distribution
/// (TVD <= 1e-10).
bool branch_determinism_check(const MeasurementPattern& pat, std::string_view input,
                              const ReadoutSpec& readout);

std::string pattern_json(const MeasurementPattern& pat);
MeasurementPattern pattern_from_json(std::string_view text);

}  // namespace qpc::oneway

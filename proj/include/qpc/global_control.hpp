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
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qpc/statevector.hpp"

namespace qpc::gc {

enum class Boundary { Open, Periodic };

/// One-dimensional chain of qubit cells whose species repeat with period 2
/// or 3 (e.g. "AB" or "ABC"). Cell i has species pattern[i % period].
class CellChain {
 public:
  /// All cells in |0>.
  CellChain(std::string pattern, int length, Boundary boundary = Boundary::Open);
  CellChain(std::string pattern, Boundary boundary, PureState state);

  const std::string& pattern() const { return pattern_; }
  int period() const { return static_cast<int>(pattern_.size()); }
  int length() const { return state_.n(); }
  Boundary boundary() const { return boundary_; }
  const PureState& state() const { return state_; }

  char species(int cell) const { return pattern_[cell % period()]; }
  bool has_species(char s) const { return pattern_.find(s) != std::string::npos; }
  std::vector<int> cells_of(char s) const;

  CellChain with_state(PureState s) const { return CellChain(pattern_, boundary_, std::move(s)); }

 private:
  std::string pattern_;
  Boundary boundary_;
  PureState state_;
};

/// Same single-qubit unitary on every cell of one species.
struct SpeciesPulse {
  char species;
  Mat2 op;
};

/// Same two-qubit unitary on every adjacent (left, right) cell pair whose
/// species are (first, second). `op` treats the left cell as its high bit.
struct PairPulse {
  char first;
  char second;
  Mat4 op;
};

using GlobalPulse = std::variant<SpeciesPulse, PairPulse>;

Mat4 swap_matrix();

/// Adjacent ordered pairs matched by a pair pulse. Open chains skip the
/// missing neighbour at the ends.
std::vector<std::pair<int, int>> species_pairs(const CellChain& chain, char first, char second);

CellChain apply_pulse(const CellChain& chain, const GlobalPulse& pulse);

/// Probability of each Hamming weight 0..#cells on one species.
std::vector<double> weight_probabilities(const CellChain& chain, char species);

struct BulkResult {
  char species;
  int weight;
  double probability;
  CellChain post;
};

/// Projects onto one Hamming-weight eigenspace of the species' cells.
BulkResult bulk_measure(const CellChain& chain, char species, std::uint64_t seed);

/// Resets every cell of the species to |0>.
CellChain cool_species(const CellChain& chain, char species, std::uint64_t seed = 0);

/// Cyclic shift by `cells` positions (must be a multiple of the period on a
/// periodic chain).
CellChain translate(const CellChain& chain, int cells);

/// Cell reached by site 0 after `rounds` transport cycles.
int transport_destination(const CellChain& chain, int rounds);

/// Cools the chain, loads `payload` into cell 0 and runs the SWAP cycle over
/// consecutive species pairs `rounds` times, moving the payload one species
/// period to the right per round.
CellChain transport_demo(const CellChain& chain, const Eigen::Vector2cd& payload, int rounds);

/// |<0..payload@site..0|chain>|^2
double payload_fidelity(const CellChain& chain, int site, const Eigen::Vector2cd& payload);

/// Named single-qubit gate: I X Y Z H S T.
Mat2 named_gate(std::string_view name);

struct ScriptEvent {
  std::string instruction;
  char species = 0;
  int weight = -1;  // set for MEASURE
};

struct ScriptResult {
  CellChain chain;
  std::vector<ScriptEvent> events;
};

/// Runs a line-per-instruction control script:
///   PULSE <species> <gate-name | R kx ky kz m>
///   PAIR <s1> <s2> <CZ | SWAP>
///   MEASURE <species>
///   COOL <species>
ScriptResult run_script(const CellChain& chain, std::string_view script, std::uint64_t seed);

}  // namespace qpc::gc

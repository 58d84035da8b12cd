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
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpc/program.hpp"
#include "qpc/types.hpp"

namespace qpc {

inline constexpr int kMaxStateQubits = 24;

/// Normalized pure state of n qubits. Basis index bit (n-1-q) holds qubit q,
/// so qubit 0 is the most significant bit and index 2 of a 2-qubit register
/// is the string "10".
class PureState {
 public:
  PureState(int n, CVector amplitudes);

  int n() const { return n_; }
  const CVector& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }

 private:
  int n_;
  CVector amps_;
};

/// Ordered, distinct qubit indices to read out. Outcome strings list the
/// bits in this order.
class ReadoutSpec {
 public:
  ReadoutSpec(std::vector<int> qubits, int n);

  const std::vector<int>& qubits() const { return qubits_; }
  std::size_t size() const { return qubits_.size(); }

  /// Parses "0,2,1".
  static ReadoutSpec parse(std::string_view csv, int n);
  static ReadoutSpec all(int n);

 private:
  std::vector<int> qubits_;
};

/// Outcome string -> probability. Every m-bit string is present.
using Distribution = std::map<std::string, double>;
using Counts = std::map<std::string, std::uint64_t>;

// In-place kernels on a raw amplitude vector of n qubits.
void apply_single_qubit(CVector& amps, int n, const Mat2& op, int qubit);
void apply_cz(CVector& amps, int n, int a, int b);
/// Applies a 4x4 operator with `first` as the high bit of its basis.
void apply_two_qubit(CVector& amps, int n, const Mat4& op, int first, int second);

PureState init_from_bitstring(std::string_view bits);
PureState apply_gate(const PureState& state, const Gate& g);
PureState apply_single(const PureState& state, const Mat2& op, int qubit);

/// U_P |s_in>; the register width is the input length.
PureState run_program(const Program& p, std::string_view input);

Distribution distribution(const PureState& state, const ReadoutSpec& readout);
Distribution exact_distribution(const Program& p, std::string_view input,
                                const ReadoutSpec& readout);

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
double uniform01(std::mt19937_64& rng);

/// Seed-deterministic multinomial sample.
Counts sample(const Distribution& d, std::uint64_t shots, std::uint64_t seed);

struct QubitMeasurement {
  int outcome;
  double probability;
  PureState post;
};

/// Projective Z measurement of one qubit; the outcome is drawn from `rng`.
QubitMeasurement measure_qubit(const PureState& state, int qubit, std::mt19937_64& rng);

/// Resets the listed qubits to |0> by measuring each and flipping on 1.
PureState cool(const PureState& state, std::span<const int> qubits,
               std::uint64_t seed = 0);

/// Total variation distance over the union of outcomes.
double tvd(const Distribution& a, const Distribution& b);

/// Canonical JSON object with lexicographically sorted outcomes.
std::string distribution_json(const Distribution& d);
Distribution distribution_from_json(std::string_view text);

}  // namespace qpc

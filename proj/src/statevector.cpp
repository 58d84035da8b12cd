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

#include "qpc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qpc {

namespace {

Eigen::Index bit_of(int qubit, int n) { return Eigen::Index{1} << (n - 1 - qubit); }

void check_index(int q, int n) {
  if (q < 0 || q >= n) {
    throw Error("qubit index " + std::to_string(q) + " out of range for " +
                std::to_string(n) + " qubits");
  }
}

}  // namespace

PureState::PureState(int n, CVector amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (n_ < 1 || n_ > kMaxStateQubits) {
    throw Error("state width must be in [1, " + std::to_string(kMaxStateQubits) + "]");
  }
  if (amps_.size() != (Eigen::Index{1} << n_)) throw Error("amplitude vector has wrong length");
  if (std::abs(amps_.squaredNorm() - 1.0) > 1e-10) throw Error("state is not normalized");
}

ReadoutSpec::ReadoutSpec(std::vector<int> qubits, int n) : qubits_(std::move(qubits)) {
  if (qubits_.empty()) throw Error("readout set must be non-empty");
  if (static_cast<int>(qubits_.size()) > n) throw Error("readout larger than register");
  std::set<int> seen;
  for (int q : qubits_) {
    check_index(q, n);
    if (!seen.insert(q).second) throw Error("duplicate readout qubit " + std::to_string(q));
  }
}

ReadoutSpec ReadoutSpec::parse(std::string_view csv, int n) {
  std::vector<int> qs;
  std::string tok;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      qs.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error("bad readout index '" + tok + "'");
    }
  }
  return ReadoutSpec(std::move(qs), n);
}

ReadoutSpec ReadoutSpec::all(int n) {
  std::vector<int> qs(n);
  for (int q = 0; q < n; ++q) qs[q] = q;
  return ReadoutSpec(std::move(qs), n);
}

void apply_single_qubit(CVector& amps, int n, const Mat2& op, int qubit) {
  check_index(qubit, n);
  const Eigen::Index bit = bit_of(qubit, n);
  const Eigen::Index dim = amps.size();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | bit];
    amps[i] = op(0, 0) * a0 + op(0, 1) * a1;
    amps[i | bit] = op(1, 0) * a0 + op(1, 1) * a1;
  }
}

void apply_cz(CVector& amps, int n, int a, int b) {
  check_index(a, n);
  check_index(b, n);
  if (a == b) throw Error("CZ on a single qubit");
  const Eigen::Index mask = bit_of(a, n) | bit_of(b, n);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if ((i & mask) == mask) amps[i] = -amps[i];
  }
}

void apply_two_qubit(CVector& amps, int n, const Mat4& op, int first, int second) {
  check_index(first, n);
  check_index(second, n);
  if (first == second) throw Error("two-qubit op on a single qubit");
  const Eigen::Index hi = bit_of(first, n);
  const Eigen::Index lo = bit_of(second, n);
  const std::array<Eigen::Index, 4> offs{0, lo, hi, hi | lo};
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (i & (hi | lo)) continue;
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v[k] = amps[i | offs[k]];
    const Eigen::Vector4cd w = op * v;
    for (int k = 0; k < 4; ++k) amps[i | offs[k]] = w[k];
  }
}

PureState init_from_bitstring(std::string_view bits) {
  if (bits.empty()) throw Error("empty input bit string");
  if (bits.size() > static_cast<std::size_t>(kMaxStateQubits)) {
    throw Error("input longer than " + std::to_string(kMaxStateQubits) + " bits");
  }
  const int n = static_cast<int>(bits.size());
  Eigen::Index index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(std::string("non-binary input character '") + c + "'");
    index = (index << 1) | (c == '1' ? 1 : 0);
  }
  CVector amps = CVector::Zero(Eigen::Index{1} << n);
  amps[index] = 1.0;
  return PureState(n, std::move(amps));
}

PureState apply_gate(const PureState& state, const Gate& g) {
  CVector amps = state.amplitudes();
  if (const auto* r = std::get_if<RotationGate>(&g)) {
    apply_single_qubit(amps, state.n(), rotation_matrix(*r), r->target);
  } else {
    const auto& cz = std::get<CZGate>(g);
    apply_cz(amps, state.n(), cz.control, cz.target);
  }
  return PureState(state.n(), std::move(amps));
}

PureState apply_single(const PureState& state, const Mat2& op, int qubit) {
  CVector amps = state.amplitudes();
  apply_single_qubit(amps, state.n(), op, qubit);
  return PureState(state.n(), std::move(amps));
}

PureState run_program(const Program& p, std::string_view input) {
  if (static_cast<int>(input.size()) < p.width()) {
    throw Error("input has " + std::to_string(input.size()) + " bits but program needs " +
                std::to_string(p.width()));
  }
  PureState s = init_from_bitstring(input);
  CVector amps = s.amplitudes();
  for (const auto& g : p.gates()) {
    if (const auto* r = std::get_if<RotationGate>(&g)) {
      apply_single_qubit(amps, s.n(), rotation_matrix(*r), r->target);
    } else {
      const auto& cz = std::get<CZGate>(g);
      apply_cz(amps, s.n(), cz.control, cz.target);
    }
  }
  return PureState(s.n(), std::move(amps));
}

Distribution distribution(const PureState& state, const ReadoutSpec& readout) {
  const int n = state.n();
  const auto& qs = readout.qubits();
  const std::size_t m = qs.size();
  for (int q : qs) check_index(q, n);
  std::vector<double> probs(std::size_t{1} << m, 0.0);
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    std::size_t key = 0;
    for (int q : qs) key = (key << 1) | ((i & bit_of(q, n)) ? 1 : 0);
    probs[key] += std::norm(state.amplitudes()[i]);
  }
  Distribution d;
  for (std::size_t key = 0; key < probs.size(); ++key) {
    std::string s(m, '0');
    for (std::size_t j = 0; j < m; ++j) {
      if (key & (std::size_t{1} << (m - 1 - j))) s[j] = '1';
    }
    d.emplace(std::move(s), std::max(0.0, probs[key]));
  }
  return d;
}

Distribution exact_distribution(const Program& p, std::string_view input,
                                const ReadoutSpec& readout) {
  return distribution(run_program(p, input), readout);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Counts sample(const Distribution& d, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error("shots must be positive");
  if (d.empty()) throw Error("cannot sample an empty distribution");
  std::vector<std::pair<std::string, double>> cdf;
  double acc = 0.0;
  for (const auto& [k, p] : d) {
    acc += p;
    cdf.emplace_back(k, acc);
  }
  std::mt19937_64 rng(seed);
  Counts counts;
  for (const auto& [k, p] : d) counts[k] = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u,
                               [](double x, const auto& e) { return x < e.second; });
    if (it == cdf.end()) {
      // u rounded up to acc: take the last outcome with non-zero mass.
      do {
        --it;
      } while (it != cdf.begin() && d.at(it->first) == 0.0);
    }
    ++counts[it->first];
  }
  return counts;
}

QubitMeasurement measure_qubit(const PureState& state, int qubit, std::mt19937_64& rng) {
  const int n = state.n();
  check_index(qubit, n);
  const Eigen::Index bit = bit_of(qubit, n);
  double p1 = 0.0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (i & bit) p1 += std::norm(state.amplitudes()[i]);
  }
  p1 = std::clamp(p1, 0.0, 1.0);
  const int outcome = uniform01(rng) < p1 ? 1 : 0;
  const double p = outcome ? p1 : 1.0 - p1;
  CVector amps = state.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (((i & bit) != 0) != (outcome == 1)) amps[i] = 0.0;
  }
  amps /= std::sqrt(p);
  return {outcome, p, PureState(n, std::move(amps))};
}

PureState cool(const PureState& state, std::span<const int> qubits, std::uint64_t seed) {
  std::set<int> seen;
  for (int q : qubits) {
    check_index(q, state.n());
    if (!seen.insert(q).second) throw Error("duplicate qubit in cool set");
  }
  std::mt19937_64 rng(seed);
  PureState s = state;
  for (int q : qubits) {
    auto m = measure_qubit(s, q, rng);
    s = m.outcome ? apply_single(m.post, pauli_x(), q) : std::move(m.post);
  }
  return s;
}

double tvd(const Distribution& a, const Distribution& b) {
  double sum = 0.0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, q] : b) {
    if (!a.contains(k)) sum += std::abs(q);
  }
  return 0.5 * sum;
}

std::string distribution_json(const Distribution& d) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, p] : d) j[k] = p;
  return j.dump();
}

Distribution distribution_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw Error("distribution JSON must be an object");
  Distribution d;
  for (const auto& [k, v] : j.items()) d[k] = v.get<double>();
  return d;
}

}  // namespace qpc

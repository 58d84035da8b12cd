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

#include "qpc/global_control.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace qpc::gc {

namespace {

void check_pattern(const std::string& pattern) {
  if (pattern.size() != 2 && pattern.size() != 3) {
    throw Error("species pattern must have period 2 or 3");
  }
  std::set<char> seen;
  for (char c : pattern) {
    if (c != 'A' && c != 'B' && c != 'C') throw Error("species must be A, B or C");
    if (!seen.insert(c).second) throw Error("species repeat within one period");
  }
}

CVector zero_state(int length) {
  if (length < 1 || length > kMaxStateQubits) throw Error("chain length out of range");
  CVector amps = CVector::Zero(Eigen::Index{1} << length);
  amps[0] = 1.0;
  return amps;
}

Eigen::Index cell_bit(int cell, int length) { return Eigen::Index{1} << (length - 1 - cell); }

void require_species(const CellChain& chain, char s) {
  if (!chain.has_species(s)) throw Error(std::string("unknown species '") + s + "'");
}

}  // namespace

CellChain::CellChain(std::string pattern, int length, Boundary boundary)
    : CellChain(std::move(pattern), boundary, PureState(length, zero_state(length))) {}

CellChain::CellChain(std::string pattern, Boundary boundary, PureState state)
    : pattern_(std::move(pattern)), boundary_(boundary), state_(std::move(state)) {
  check_pattern(pattern_);
  if (state_.n() < 2) throw Error("chain needs at least 2 cells");
  if (boundary_ == Boundary::Periodic && state_.n() % period() != 0) {
    throw Error("periodic chain length must be a multiple of the species period");
  }
}

std::vector<int> CellChain::cells_of(char s) const {
  std::vector<int> cells;
  for (int i = 0; i < length(); ++i) {
    if (species(i) == s) cells.push_back(i);
  }
  return cells;
}

Mat4 swap_matrix() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

std::vector<std::pair<int, int>> species_pairs(const CellChain& chain, char first, char second) {
  require_species(chain, first);
  require_species(chain, second);
  const int length = chain.length();
  const int last = chain.boundary() == Boundary::Periodic ? length : length - 1;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < last; ++i) {
    const int j = (i + 1) % length;
    if (chain.species(i) == first && chain.species(j) == second) pairs.emplace_back(i, j);
  }
  return pairs;
}

CellChain apply_pulse(const CellChain& chain, const GlobalPulse& pulse) {
  CVector amps = chain.state().amplitudes();
  const int n = chain.length();
  if (const auto* sp = std::get_if<SpeciesPulse>(&pulse)) {
    require_species(chain, sp->species);
    for (int cell : chain.cells_of(sp->species)) apply_single_qubit(amps, n, sp->op, cell);
  } else {
    const auto& pp = std::get<PairPulse>(pulse);
    const auto pairs = species_pairs(chain, pp.first, pp.second);
    std::set<int> used;
    for (auto [a, b] : pairs) {
      if (!used.insert(a).second || !used.insert(b).second) {
        throw Error("pair pulse acts on overlapping cell pairs");
      }
    }
    for (auto [a, b] : pairs) apply_two_qubit(amps, n, pp.op, a, b);
  }
  return chain.with_state(PureState(n, std::move(amps)));
}

namespace {

Eigen::Index species_mask(const CellChain& chain, char species) {
  Eigen::Index mask = 0;
  for (int cell : chain.cells_of(species)) mask |= cell_bit(cell, chain.length());
  return mask;
}

}  // namespace

std::vector<double> weight_probabilities(const CellChain& chain, char species) {
  require_species(chain, species);
  const Eigen::Index mask = species_mask(chain, species);
  std::vector<double> probs(chain.cells_of(species).size() + 1, 0.0);
  const auto& amps = chain.state().amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    probs[std::popcount(static_cast<std::uint64_t>(i & mask))] += std::norm(amps[i]);
  }
  return probs;
}

BulkResult bulk_measure(const CellChain& chain, char species, std::uint64_t seed) {
  const auto probs = weight_probabilities(chain, species);
  std::mt19937_64 rng(seed);
  const double u = uniform01(rng);
  int weight = 0;
  double acc = 0.0;
  for (std::size_t w = 0; w < probs.size(); ++w) {
    if (probs[w] <= 0.0) continue;
    weight = static_cast<int>(w);
    acc += probs[w];
    if (u < acc) break;
  }
  const Eigen::Index mask = species_mask(chain, species);
  CVector amps = chain.state().amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (std::popcount(static_cast<std::uint64_t>(i & mask)) != weight) amps[i] = 0.0;
  }
  amps /= amps.norm();
  return {species, weight, probs[weight], chain.with_state(PureState(chain.length(), std::move(amps)))};
}

CellChain cool_species(const CellChain& chain, char species, std::uint64_t seed) {
  require_species(chain, species);
  const auto cells = chain.cells_of(species);
  return chain.with_state(cool(chain.state(), cells, seed));
}

CellChain translate(const CellChain& chain, int cells) {
  const int n = chain.length();
  if (chain.boundary() == Boundary::Periodic && cells % chain.period() != 0) {
    throw Error("translation must preserve the species pattern");
  }
  const int shift = ((cells % n) + n) % n;
  const auto& amps = chain.state().amplitudes();
  CVector out(amps.size());
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    Eigen::Index j = 0;
    for (int c = 0; c < n; ++c) {
      if (i & cell_bit(c, n)) j |= cell_bit((c + shift) % n, n);
    }
    out[j] = amps[i];
  }
  return chain.with_state(PureState(n, std::move(out)));
}

int transport_destination(const CellChain& chain, int rounds) {
  if (rounds < 0) throw Error("rounds must be non-negative");
  const long long dest = static_cast<long long>(chain.period()) * rounds;
  if (chain.boundary() == Boundary::Open) {
    if (dest >= chain.length()) throw Error("payload would cross the open chain boundary");
    return static_cast<int>(dest);
  }
  return static_cast<int>(dest % chain.length());
}

CellChain transport_demo(const CellChain& chain, const Eigen::Vector2cd& payload, int rounds) {
  transport_destination(chain, rounds);
  const double norm = payload.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw Error("payload must be a normalized qubit state");

  CellChain c = chain;
  for (char s : chain.pattern()) c = cool_species(c, s);
  // Load cell 0: the chain is |0...0>, so only basis states 0 and 100..0 are populated.
  CVector amps = CVector::Zero(c.state().dim());
  amps[0] = payload[0];
  amps[cell_bit(0, c.length())] = payload[1];
  c = c.with_state(PureState(c.length(), std::move(amps)));

  const int p = chain.period();
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < p; ++k) {
      const char first = chain.pattern()[k];
      const char second = chain.pattern()[(k + 1) % p];
      c = apply_pulse(c, PairPulse{first, second, swap_matrix()});
    }
  }
  return c;
}

double payload_fidelity(const CellChain& chain, int site, const Eigen::Vector2cd& payload) {
  const auto& amps = chain.state().amplitudes();
  const Complex overlap = std::conj(payload[0]) * amps[0] +
                          std::conj(payload[1]) * amps[cell_bit(site, chain.length())];
  return std::norm(overlap);
}

Mat2 named_gate(std::string_view name) {
  const Complex i(0, 1);
  Mat2 m;
  if (name == "I") return Mat2::Identity();
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") {
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
  }
  if (name == "S") {
    m << 1, 0, 0, i;
    return m;
  }
  if (name == "T") {
    m << 1, 0, 0, std::polar(1.0, kPi / 4);
    return m;
  }
  throw Error("unknown gate '" + std::string(name) + "'");
}

namespace {

char parse_species(const std::string& tok, int line) {
  if (tok.size() != 1) throw ParseError(line, "bad species '" + tok + "'");
  return tok[0];
}

std::uint64_t parse_count(const std::string& tok, int line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected non-negative integer, got '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(line, "integer out of range: " + tok);
  }
}

}  // namespace

ScriptResult run_script(const CellChain& chain, std::string_view script, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ScriptResult result{chain, {}};
  std::istringstream in{std::string(script)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ss(raw);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    const std::string& op = toks[0];
    try {
      if (op == "PULSE") {
        if (toks.size() == 3) {
          const char s = parse_species(toks[1], line);
          result.chain = apply_pulse(result.chain, SpeciesPulse{s, named_gate(toks[2])});
          result.events.push_back({raw, s, -1});
        } else if (toks.size() == 7 && toks[2] == "R") {
          const char s = parse_species(toks[1], line);
          RotationGate g;
          for (int a = 0; a < 3; ++a) g.k[a] = parse_count(toks[3 + a], line);
          g.precision = static_cast<int>(parse_count(toks[6], line));
          validate(g);
          const Mat2 op = rotation_matrix(g);
          result.chain = apply_pulse(result.chain, SpeciesPulse{s, op});
          result.events.push_back({raw, s, -1});
        } else {
          throw ParseError(line, "PULSE takes <species> <gate> or <species> R kx ky kz m");
        }
      } else if (op == "PAIR") {
        if (toks.size() != 4) throw ParseError(line, "PAIR takes <s1> <s2> <CZ|SWAP>");
        Mat4 m;
        if (toks[3] == "CZ") {
          m = cz_matrix();
        } else if (toks[3] == "SWAP") {
          m = swap_matrix();
        } else {
          throw ParseError(line, "unknown pair gate '" + toks[3] + "'");
        }
        result.chain = apply_pulse(
            result.chain, PairPulse{parse_species(toks[1], line), parse_species(toks[2], line), m});
        result.events.push_back({raw, 0, -1});
      } else if (op == "MEASURE") {
        if (toks.size() != 2) throw ParseError(line, "MEASURE takes <species>");
        const char s = parse_species(toks[1], line);
        auto r = bulk_measure(result.chain, s, rng());
        result.chain = std::move(r.post);
        result.events.push_back({raw, s, r.weight});
      } else if (op == "COOL") {
        if (toks.size() != 2) throw ParseError(line, "COOL takes <species>");
        const char s = parse_species(toks[1], line);
        result.chain = cool_species(result.chain, s, rng());
        result.events.push_back({raw, s, -1});
      } else {
        throw ParseError(line, "unknown instruction '" + op + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
  return result;
}

}  // namespace qpc::gc

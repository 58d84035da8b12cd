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

#include "qpc/oneway.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace qpc::oneway {

namespace {

using VertexSet = std::set<int>;

void toggle(VertexSet& target, const VertexSet& other) {
  for (int v : other) {
    if (!target.erase(v)) target.insert(v);
  }
}

std::vector<int> to_vector(const VertexSet& s) { return {s.begin(), s.end()}; }

}  // namespace

void validate(const MeasurementPattern& pat) {
  std::set<int> verts;
  for (int v : pat.vertices) {
    if (!verts.insert(v).second) throw Error("duplicate vertex " + std::to_string(v));
  }
  auto require_vertex = [&](int v, const char* what) {
    if (!verts.contains(v)) {
      throw Error(std::string(what) + " references unknown vertex " + std::to_string(v));
    }
  };
  std::set<std::pair<int, int>> seen_edges;
  for (auto [a, b] : pat.edges) {
    require_vertex(a, "edge");
    require_vertex(b, "edge");
    if (a == b) throw Error("self-loop on vertex " + std::to_string(a));
    if (!seen_edges.insert(std::minmax(a, b)).second) throw Error("duplicate edge");
  }
  if (pat.inputs.size() != pat.outputs.size()) {
    throw Error("input and output wire counts differ");
  }
  if (pat.inputs.empty()) throw Error("pattern has no wires");
  std::set<int> ins, outs;
  for (int v : pat.inputs) {
    require_vertex(v, "input");
    if (!ins.insert(v).second) throw Error("duplicate input vertex");
  }
  for (int v : pat.outputs) {
    require_vertex(v, "output");
    if (!outs.insert(v).second) throw Error("duplicate output vertex");
  }

  std::set<int> measured;
  for (const auto& step : pat.steps) {
    require_vertex(step.vertex, "step");
    if (outs.contains(step.vertex)) throw Error("output vertex is measured");
    for (const auto* deps : {&step.s_deps, &step.t_deps}) {
      for (int d : *deps) {
        if (!measured.contains(d)) {
          throw Error("dependency order violated: step on vertex " +
                      std::to_string(step.vertex) + " depends on vertex " +
                      std::to_string(d) + " not measured earlier");
        }
      }
    }
    if (!measured.insert(step.vertex).second) {
      throw Error("vertex " + std::to_string(step.vertex) + " measured twice");
    }
  }
  if (measured.size() + outs.size() != verts.size()) {
    throw Error("every non-output vertex must be measured exactly once");
  }

  if (pat.byproducts.size() != pat.outputs.size()) {
    throw Error("need one byproduct entry per output");
  }
  for (std::size_t i = 0; i < pat.outputs.size(); ++i) {
    const auto& bp = pat.byproducts[i];
    if (bp.vertex != pat.outputs[i]) throw Error("byproduct order does not match outputs");
    for (const auto* deps : {&bp.x_deps, &bp.z_deps}) {
      for (int d : *deps) {
        if (!measured.contains(d)) throw Error("byproduct depends on an unmeasured vertex");
      }
    }
  }
}

Mat2 rz(double angle) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, -angle / 2);
  m(1, 1) = std::polar(1.0, angle / 2);
  return m;
}

Mat2 rx(double angle) {
  const Complex i(0, 1);
  return std::cos(angle / 2) * Mat2::Identity() - i * std::sin(angle / 2) * pauli_x();
}

EulerZXZ euler_zxz(const Mat2& u) {
  // ZYZ first: U ~ Rz(a) Ry(b) Rz(c), then Rx(b) = Rz(-pi/2) Ry(b) Rz(pi/2).
  // Phase ratios: u10/u00 = e^{ia} tan(b/2), u11/u10 = e^{ic} cot(b/2).
  constexpr double kTiny = 1e-12;
  const double b = 2.0 * std::atan2(std::abs(u(1, 0)), std::abs(u(0, 0)));
  double a = 0.0;
  double c = 0.0;
  if (std::abs(u(1, 0)) <= kTiny) {
    // Diagonal: U ~ Rz(arg u11 - arg u00), carried entirely by alpha.
    return {std::arg(u(1, 1)) - std::arg(u(0, 0)), b, 0.0};
  }
  if (std::abs(u(0, 0)) <= kTiny) {
    a = std::arg(u(1, 0)) - std::arg(-u(0, 1));
  } else {
    a = std::arg(u(1, 0)) - std::arg(u(0, 0));
    c = std::arg(u(1, 1)) - std::arg(u(1, 0));
  }
  return {c - kPi / 2, b, a + kPi / 2};
}

MeasurementPattern compile_to_pattern(const Program& p) {
  const int wires = p.width();
  MeasurementPattern pat;
  std::vector<int> frontier(wires);
  std::vector<VertexSet> xframe(wires), zframe(wires);
  std::set<std::pair<int, int>> edges;
  auto toggle_edge = [&](int a, int b) {
    const auto e = std::minmax(a, b);
    if (!edges.erase(e)) edges.insert(e);
  };

  int next = 0;
  for (int w = 0; w < wires; ++w) {
    pat.vertices.push_back(next);
    pat.inputs.push_back(next);
    frontier[w] = next++;
  }

  // J(theta) = H diag(1, e^{i theta}) teleported one vertex down the wire.
  auto apply_j = [&](int w, double theta) {
    const int from = frontier[w];
    const int to = next++;
    pat.vertices.push_back(to);
    toggle_edge(from, to);
    pat.steps.push_back({from, -theta, to_vector(xframe[w]), to_vector(zframe[w])});
    zframe[w] = std::move(xframe[w]);
    xframe[w] = VertexSet{from};
    frontier[w] = to;
  };

  for (const auto& g : p.gates()) {
    if (const auto* r = std::get_if<RotationGate>(&g)) {
      // Rz(gamma) Rx(beta) Rz(alpha) ~ J(0) J(gamma) J(beta) J(alpha)
      const EulerZXZ e = euler_zxz(rotation_matrix(*r));
      apply_j(r->target, e.alpha);
      apply_j(r->target, e.beta);
      apply_j(r->target, e.gamma);
      apply_j(r->target, 0.0);
    } else {
      const auto& cz = std::get<CZGate>(g);
      toggle_edge(frontier[cz.control], frontier[cz.target]);
      // CZ X_a = X_a Z_b CZ
      const VertexSet xa = xframe[cz.control];
      const VertexSet xb = xframe[cz.target];
      toggle(zframe[cz.control], xb);
      toggle(zframe[cz.target], xa);
    }
  }

  pat.edges.assign(edges.begin(), edges.end());
  for (int w = 0; w < wires; ++w) {
    pat.outputs.push_back(frontier[w]);
    pat.byproducts.push_back({frontier[w], to_vector(xframe[w]), to_vector(zframe[w])});
  }
  return pat;
}

namespace {

// Register holding only the currently prepared, not yet measured vertices.
// Vertex live[p] sits at bit (live.size() - 1 - p) of the amplitude index.
class LiveRegister {
 public:
  const std::vector<int>& live() const { return live_; }
  int width() const { return static_cast<int>(live_.size()); }

  int position(int v) const {
    auto it = std::find(live_.begin(), live_.end(), v);
    return it == live_.end() ? -1 : static_cast<int>(it - live_.begin());
  }

  /// Appends a qubit in state (c0|0> + c1|1>) to every branch's amplitudes.
  void append(int v, Complex c0, Complex c1, std::vector<CVector*>& branches) {
    live_.push_back(v);
    for (CVector* amps : branches) {
      CVector grown(amps->size() * 2);
      for (Eigen::Index i = 0; i < amps->size(); ++i) {
        grown[2 * i] = (*amps)[i] * c0;
        grown[2 * i + 1] = (*amps)[i] * c1;
      }
      *amps = std::move(grown);
    }
  }

  void remove(int v) { live_.erase(live_.begin() + position(v)); }

 private:
  std::vector<int> live_;
};

struct Branch {
  CVector amps;
  std::vector<std::uint8_t> outcomes;  // indexed by vertex id
  double weight = 1.0;
  double count = 1.0;
};

struct PatternIndex {
  std::unordered_map<int, std::vector<int>> neighbours;
  std::unordered_map<int, int> input_wire;
  int max_vertex = 0;

  explicit PatternIndex(const MeasurementPattern& pat) {
    for (auto [a, b] : pat.edges) {
      neighbours[a].push_back(b);
      neighbours[b].push_back(a);
    }
    for (std::size_t w = 0; w < pat.inputs.size(); ++w) {
      input_wire[pat.inputs[w]] = static_cast<int>(w);
    }
    for (int v : pat.vertices) max_vertex = std::max(max_vertex, v);
  }
};

int parity(const std::vector<int>& deps, const std::vector<std::uint8_t>& outcomes) {
  int p = 0;
  for (int d : deps) p ^= outcomes[d];
  return p;
}

// Projects the qubit at position `pos` of an n-qubit vector onto
// (|0> + sign e^{i phi}|1>)/sqrt(2) and drops it. Returns the unnormalized
// remainder.
CVector project_out(const CVector& amps, int n, int pos, double phi, int outcome) {
  const Eigen::Index bit = Eigen::Index{1} << (n - 1 - pos);
  const Complex coeff = std::polar((outcome ? -1.0 : 1.0) / std::sqrt(2.0), -phi);
  CVector out(amps.size() / 2);
  const Eigen::Index low_mask = bit - 1;
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const Eigen::Index i0 = ((j & ~low_mask) << 1) | (j & low_mask);
    out[j] = amps[i0] / std::sqrt(2.0) + coeff * amps[i0 | bit];
  }
  return out;
}

class PatternRunner {
 public:
  PatternRunner(const MeasurementPattern& pat, std::string_view input)
      : pat_(pat), index_(pat) {
    validate(pat);
    if (input.size() != pat.inputs.size()) {
      throw Error("pattern has " + std::to_string(pat.inputs.size()) +
                  " input wires but input has " + std::to_string(input.size()) + " bits");
    }
    for (char c : input) {
      if (c != '0' && c != '1') throw Error("non-binary input character");
    }
    input_ = std::string(input);
  }

  /// Prepares v (and its edges to live vertices) in every branch.
  void activate(int v, std::vector<Branch>& branches) {
    if (active_.contains(v)) return;
    active_.insert(v);
    std::vector<CVector*> ptrs;
    for (auto& b : branches) ptrs.push_back(&b.amps);
    auto in = index_.input_wire.find(v);
    if (in != index_.input_wire.end()) {
      const bool one = input_[in->second] == '1';
      reg_.append(v, one ? 0.0 : 1.0, one ? 1.0 : 0.0, ptrs);
    } else {
      const double h = 1.0 / std::sqrt(2.0);
      reg_.append(v, h, h, ptrs);
    }
    const int n = reg_.width();
    for (int u : index_.neighbours[v]) {
      const int pos = reg_.position(u);
      if (pos < 0) continue;
      for (auto& b : branches) apply_cz(b.amps, n, pos, n - 1);
    }
  }

  void activate_all_inputs(std::vector<Branch>& branches) {
    for (int v : pat_.inputs) activate(v, branches);
  }

  void prepare_step(const MeasurementStep& step, std::vector<Branch>& branches) {
    activate(step.vertex, branches);
    for (int u : index_.neighbours[step.vertex]) activate(u, branches);
  }

  /// Splits each branch on the measurement outcome. `rng` selects a single
  /// outcome when non-null.
  std::vector<Branch> measure(const MeasurementStep& step, std::vector<Branch>& branches,
                              std::mt19937_64* rng) {
    const int n = reg_.width();
    const int pos = reg_.position(step.vertex);
    std::vector<Branch> next;
    for (auto& b : branches) {
      const int s = parity(step.s_deps, b.outcomes);
      const int t = parity(step.t_deps, b.outcomes);
      const double phi = (s ? -step.angle : step.angle) + (t ? kPi : 0.0);
      std::array<CVector, 2> parts{project_out(b.amps, n, pos, phi, 0),
                                   project_out(b.amps, n, pos, phi, 1)};
      std::array<double, 2> probs{parts[0].squaredNorm(), parts[1].squaredNorm()};
      const double total = probs[0] + probs[1];
      probs[0] /= total;
      probs[1] /= total;
      int only = -1;
      if (rng) only = uniform01(*rng) < probs[1] ? 1 : 0;
      for (int m = 0; m < 2; ++m) {
        if (only >= 0 && m != only) continue;
        if (only < 0 && probs[m] < 1e-15) continue;
        Branch child;
        child.amps = parts[m] / std::sqrt(probs[m] * total);
        child.outcomes = b.outcomes;
        child.outcomes[step.vertex] = static_cast<std::uint8_t>(m);
        child.weight = only >= 0 ? 1.0 : b.weight * probs[m];
        child.count = b.count;
        next.push_back(std::move(child));
      }
    }
    reg_.remove(step.vertex);
    return next;
  }

  /// Applies byproduct corrections and returns the state in wire order.
  PureState finish(Branch& b) {
    std::vector<Branch> one{std::move(b)};
    for (int v : pat_.outputs) activate(v, one);
    Branch& br = one.front();
    const int n = reg_.width();
    for (const auto& bp : pat_.byproducts) {
      const int pos = reg_.position(bp.vertex);
      if (parity(bp.x_deps, br.outcomes)) apply_single_qubit(br.amps, n, pauli_x(), pos);
      if (parity(bp.z_deps, br.outcomes)) apply_single_qubit(br.amps, n, pauli_z(), pos);
    }
    // Reorder live qubits into wire order.
    std::vector<int> wire_pos(n);
    for (int w = 0; w < n; ++w) wire_pos[w] = reg_.position(pat_.outputs[w]);
    CVector ordered(br.amps.size());
    for (Eigen::Index i = 0; i < br.amps.size(); ++i) {
      Eigen::Index j = 0;
      for (int w = 0; w < n; ++w) {
        j = (j << 1) | ((i >> (n - 1 - wire_pos[w])) & 1);
      }
      ordered[j] = br.amps[i];
    }
    b = std::move(br);
    return PureState(n, std::move(ordered));
  }

  Branch root() const {
    Branch b;
    b.amps = CVector::Ones(1);
    b.outcomes.assign(static_cast<std::size_t>(index_.max_vertex) + 1, 0);
    return b;
  }

  /// Every dependency set read at or after step `from` (steps and byproducts).
  std::vector<const std::vector<int>*> future_sets(std::size_t from) const {
    std::vector<const std::vector<int>*> sets;
    for (std::size_t k = from; k < pat_.steps.size(); ++k) {
      sets.push_back(&pat_.steps[k].s_deps);
      sets.push_back(&pat_.steps[k].t_deps);
    }
    for (const auto& bp : pat_.byproducts) {
      sets.push_back(&bp.x_deps);
      sets.push_back(&bp.z_deps);
    }
    return sets;
  }

  const MeasurementPattern& pattern() const { return pat_; }

 private:
  const MeasurementPattern& pat_;
  PatternIndex index_;
  std::string input_;
  LiveRegister reg_;
  std::set<int> active_;
};

bool same_up_to_phase(const CVector& a, const CVector& b, double tol) {
  const Complex overlap = a.dot(b);  // <a|b>
  const double mag = std::abs(overlap);
  if (mag < 0.5) return false;
  const Complex phase = overlap / mag;
  return max_abs_diff(b, phase * a) <= tol;
}

// Merges branches whose observable classical record and state coincide.
std::vector<Branch> merge(std::vector<Branch> branches,
                          const std::vector<const std::vector<int>*>& future) {
  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> groups;
  std::vector<Branch> out;
  for (auto& b : branches) {
    std::vector<std::uint8_t> sig;
    sig.reserve(future.size());
    for (const auto* set : future) sig.push_back(static_cast<std::uint8_t>(parity(*set, b.outcomes)));
    auto& bucket = groups[sig];
    bool merged = false;
    for (std::size_t idx : bucket) {
      if (same_up_to_phase(out[idx].amps, b.amps, 1e-12)) {
        out[idx].weight += b.weight;
        out[idx].count += b.count;
        merged = true;
        break;
      }
    }
    if (!merged) {
      bucket.push_back(out.size());
      out.push_back(std::move(b));
    }
  }
  return out;
}

}  // namespace

std::vector<BranchClass> enumerate_branches(const MeasurementPattern& pat,
                                            std::string_view input,
                                            const ReadoutSpec& readout) {
  PatternRunner runner(pat, input);
  if (static_cast<int>(readout.size()) > static_cast<int>(pat.wires())) {
    throw Error("readout wider than pattern");
  }
  std::vector<Branch> branches{runner.root()};
  runner.activate_all_inputs(branches);
  for (std::size_t k = 0; k < pat.steps.size(); ++k) {
    runner.prepare_step(pat.steps[k], branches);
    branches = runner.measure(pat.steps[k], branches, nullptr);
    branches = merge(std::move(branches), runner.future_sets(k + 1));
    if (branches.size() > kMaxBranchClasses) {
      throw Error("branch enumeration guard exceeded");
    }
  }
  // Outputs are activated inside finish(); do it once for all branches so the
  // shared register layout stays consistent.
  std::vector<BranchClass> classes;
  for (int v : pat.outputs) runner.activate(v, branches);
  for (auto& b : branches) {
    const PureState out = runner.finish(b);
    classes.push_back({b.weight, b.count, distribution(out, readout)});
  }
  return classes;
}

Distribution simulate_pattern(const MeasurementPattern& pat, std::string_view input,
                              const ReadoutSpec& readout, BranchPolicy policy,
                              std::uint64_t seed) {
  if (policy == BranchPolicy::SeededRandom) {
    return distribution(run_branch(pat, input, seed), readout);
  }
  Distribution avg;
  for (const auto& c : enumerate_branches(pat, input, readout)) {
    for (const auto& [k, p] : c.output) avg[k] += c.weight * p;
  }
  return avg;
}

PureState run_branch(const MeasurementPattern& pat, std::string_view input,
                     std::uint64_t seed) {
  PatternRunner runner(pat, input);
  std::mt19937_64 rng(seed);
  std::vector<Branch> branches{runner.root()};
  runner.activate_all_inputs(branches);
  for (const auto& step : pat.steps) {
    runner.prepare_step(step, branches);
    branches = runner.measure(step, branches, &rng);
  }
  return runner.finish(branches.front());
}

bool branch_determinism_check(const MeasurementPattern& pat, std::string_view input,
                              const ReadoutSpec& readout) {
  const auto classes = enumerate_branches(pat, input, readout);
  for (const auto& c : classes) {
    if (tvd(c.output, classes.front().output) > 1e-10) return false;
  }
  return true;
}

std::string pattern_json(const MeasurementPattern& pat) {
  using nlohmann::json;
  json j;
  j["vertices"] = pat.vertices;
  j["edges"] = json::array();
  for (auto [a, b] : pat.edges) j["edges"].push_back({a, b});
  j["inputs"] = pat.inputs;
  j["outputs"] = pat.outputs;
  j["steps"] = json::array();
  for (const auto& s : pat.steps) {
    j["steps"].push_back({{"vertex", s.vertex}, {"angle", s.angle}, {"s", s.s_deps}, {"t", s.t_deps}});
  }
  j["byproducts"] = json::array();
  for (const auto& b : pat.byproducts) {
    j["byproducts"].push_back({{"vertex", b.vertex}, {"x", b.x_deps}, {"z", b.z_deps}});
  }
  return j.dump(2);
}

MeasurementPattern pattern_from_json(std::string_view text) {
  MeasurementPattern pat;
  try {
    const auto j = nlohmann::json::parse(text);
    pat.vertices = j.at("vertices").get<std::vector<int>>();
    for (const auto& e : j.at("edges")) pat.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    pat.inputs = j.at("inputs").get<std::vector<int>>();
    pat.outputs = j.at("outputs").get<std::vector<int>>();
    for (const auto& s : j.at("steps")) {
      pat.steps.push_back({s.at("vertex").get<int>(), s.at("angle").get<double>(),
                           s.at("s").get<std::vector<int>>(), s.at("t").get<std::vector<int>>()});
    }
    for (const auto& b : j.at("byproducts")) {
      pat.byproducts.push_back({b.at("vertex").get<int>(), b.at("x").get<std::vector<int>>(),
                                b.at("z").get<std::vector<int>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad pattern JSON: ") + e.what());
  }
  validate(pat);
  return pat;
}

}  // namespace qpc::oneway

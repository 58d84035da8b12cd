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

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace qpc::oneway {
namespace {

constexpr const char* kBell = "R 0 0 1 0 3\nR 1 0 1 0 3\nCZ 0 1\n";

// Equal up to a global phase.
bool equivalent(const Mat2& a, const Mat2& b, double tol) {
  return std::abs(trace_fidelity(a, b) - 1.0) < tol;
}

TEST(Euler, ReconstructsRotation) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 1, 1, 6);
    const Mat2 u = rotation_matrix(std::get<RotationGate>(p.gates().front()));
    const EulerZXZ e = euler_zxz(u);
    EXPECT_TRUE(equivalent(rz(e.gamma) * rx(e.beta) * rz(e.alpha), u, 1e-12));
  }
  // Degenerate cases: diagonal and anti-diagonal.
  for (const Mat2& u : {Mat2(Mat2::Identity()), pauli_x(), pauli_y(), pauli_z(), Mat2(rz(0.3))}) {
    const EulerZXZ e = euler_zxz(u);
    EXPECT_TRUE(equivalent(rz(e.gamma) * rx(e.beta) * rz(e.alpha), u, 1e-12));
  }
}

TEST(Compile, SingleCZ) {
  const auto pat = compile_to_pattern(parse_program("CZ 0 1"));
  EXPECT_EQ(pat.wires(), 2u);
  EXPECT_EQ(pat.vertices.size(), 2u);
  ASSERT_EQ(pat.edges.size(), 1u);
  EXPECT_TRUE(pat.steps.empty());
  EXPECT_EQ(pat.inputs, pat.outputs);
}

TEST(Compile, IdentityRotationChain) {
  const auto pat = compile_to_pattern(parse_program("R 0 0 0 0 1"));
  EXPECT_EQ(pat.vertices.size(), 5u);
  EXPECT_EQ(pat.edges.size(), 4u);
  ASSERT_EQ(pat.steps.size(), 4u);
  for (const auto& s : pat.steps) EXPECT_NEAR(s.angle, 0.0, 1e-15);
  EXPECT_EQ(pat.outputs.front(), 4);
  EXPECT_TRUE(branch_determinism_check(pat, "1", ReadoutSpec({0}, 1)));
  for (const auto& c : enumerate_branches(pat, "1", ReadoutSpec({0}, 1))) {
    EXPECT_NEAR(c.output.at("1"), 1.0, 1e-12);
  }
}

TEST(Compile, StructuralCounts) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Program p = testing::random_program(rng, 1 + trial % 4, 10);
    const auto pat = compile_to_pattern(p);
    const auto c = census(p);
    EXPECT_EQ(pat.steps.size(), 4 * c.rotations);
    EXPECT_EQ(pat.vertices.size(), 4 * c.rotations + static_cast<std::size_t>(p.width()));
    EXPECT_LE(pat.vertices.size(), 5 * c.rotations + 2 * static_cast<std::size_t>(p.width()));
    EXPECT_NO_THROW(validate(pat));
  }
}

TEST(Compile, RepeatedCZCancelsEdge) {
  const auto pat = compile_to_pattern(parse_program("CZ 0 1\nCZ 1 0\n"));
  EXPECT_TRUE(pat.edges.empty());
}

TEST(Simulate, BellTypeMatchesCircuit) {
  const Program p = parse_program(kBell);
  const auto pat = compile_to_pattern(p);
  const ReadoutSpec r({0, 1}, 2);
  const auto d = simulate_pattern(pat, "00", r);
  for (const auto& [k, pr] : d) EXPECT_NEAR(pr, 0.25, 1e-12);
  EXPECT_LT(tvd(d, exact_distribution(p, "00", r)), 1e-10);
}

TEST(Simulate, CorrectedStateMatchesUpToPhase) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 1 + trial % 3;
    const Program p = testing::random_program(rng, w, 8);
    const std::string in = testing::random_bits(rng, w);
    const auto pat = compile_to_pattern(p);
    const auto expected = run_program(p, in);
    for (int b = 0; b < 3; ++b) {
      const auto got = run_branch(pat, in, rng());
      const double overlap = std::abs(expected.amplitudes().dot(got.amplitudes()));
      EXPECT_NEAR(overlap, 1.0, 1e-10);
    }
  }
}

TEST(Simulate, EquivalenceOnRandomPrograms) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 1 + trial % 4;
    const Program p = testing::random_program(rng, w, 10);
    const std::string in = testing::random_bits(rng, w);
    const auto pat = compile_to_pattern(p);
    const auto r = ReadoutSpec::all(w);
    EXPECT_LT(tvd(simulate_pattern(pat, in, r), exact_distribution(p, in, r)), 1e-9);
    EXPECT_TRUE(branch_determinism_check(pat, in, r));
  }
}

TEST(Simulate, SeededRandomIsDeterministic) {
  const auto pat = compile_to_pattern(parse_program(kBell));
  const ReadoutSpec r({0, 1}, 2);
  EXPECT_EQ(simulate_pattern(pat, "00", r, BranchPolicy::SeededRandom, 5),
            simulate_pattern(pat, "00", r, BranchPolicy::SeededRandom, 5));
}

TEST(Simulate, BranchClassesCoverAllBranches) {
  const auto pat = compile_to_pattern(parse_program("R 0 3 1 2 3\nR 0 1 1 1 2\n"));
  const auto classes = enumerate_branches(pat, "0", ReadoutSpec({0}, 1));
  double weight = 0, branches = 0;
  for (const auto& c : classes) {
    weight += c.weight;
    branches += c.branches;
  }
  EXPECT_NEAR(weight, 1.0, 1e-12);
  EXPECT_EQ(branches, 256.0);  // 2^8 outcome records
}

TEST(Simulate, InputMismatchAndOrderViolation) {
  auto pat = compile_to_pattern(parse_program("R 0 1 1 0 3"));
  EXPECT_THROW(simulate_pattern(pat, "00", ReadoutSpec({0}, 1)), Error);
  // Make step 1 depend on a vertex measured later.
  pat.steps[1].s_deps.push_back(pat.steps[3].vertex);
  EXPECT_THROW(validate(pat), Error);
  EXPECT_THROW(simulate_pattern(pat, "0", ReadoutSpec({0}, 1)), Error);
}

TEST(Validate, StructuralErrors) {
  const auto good = compile_to_pattern(parse_program("R 0 1 1 0 3\nCZ 0 1"));
  auto p = good;
  p.steps.pop_back();
  EXPECT_THROW(validate(p), Error);
  p = good;
  p.steps.push_back(p.steps.front());
  EXPECT_THROW(validate(p), Error);
  p = good;
  p.edges.emplace_back(0, 0);
  EXPECT_THROW(validate(p), Error);
  p = good;
  p.byproducts.pop_back();
  EXPECT_THROW(validate(p), Error);
}

TEST(BranchDeterminism, DeletedDependencyBreaksIt) {
  // The first rotation prepares a generic state so a sign error in the
  // second one shows up in the Z-basis statistics.
  const Program p = parse_program("R 0 3 1 2 4\nR 0 5 3 1 4");
  auto pat = compile_to_pattern(p);
  ASSERT_TRUE(branch_determinism_check(pat, "0", ReadoutSpec({0}, 1)));
  bool removed = false;
  for (std::size_t i = 4; i < pat.steps.size(); ++i) {
    auto& s = pat.steps[i];
    if (!s.s_deps.empty() && std::abs(std::sin(s.angle)) > 1e-3) {
      s.s_deps.clear();
      removed = true;
      break;
    }
  }
  ASSERT_TRUE(removed);
  EXPECT_FALSE(branch_determinism_check(pat, "0", ReadoutSpec({0}, 1)));
}

TEST(BranchDeterminism, NoMeasurementsIsVacuous) {
  const auto pat = compile_to_pattern(parse_program("CZ 0 1"));
  EXPECT_TRUE(branch_determinism_check(pat, "11", ReadoutSpec({0, 1}, 2)));
}

TEST(PatternJson, RoundTrip) {
  const auto pat = compile_to_pattern(parse_program(kBell));
  const auto back = pattern_from_json(pattern_json(pat));
  EXPECT_EQ(back.vertices, pat.vertices);
  EXPECT_EQ(back.edges, pat.edges);
  EXPECT_EQ(back.outputs, pat.outputs);
  ASSERT_EQ(back.steps.size(), pat.steps.size());
  for (std::size_t i = 0; i < pat.steps.size(); ++i) {
    EXPECT_EQ(back.steps[i].angle, pat.steps[i].angle);
    EXPECT_EQ(back.steps[i].s_deps, pat.steps[i].s_deps);
  }
  EXPECT_THROW(pattern_from_json("{}"), Error);
}

}  // namespace
}  // namespace qpc::oneway

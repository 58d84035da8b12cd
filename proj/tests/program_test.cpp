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

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace qpc {
namespace {

const Complex kI(0, 1);

TEST(ParseProgram, SingleCZ) {
  const Program p = parse_program("CZ 0 1");
  ASSERT_EQ(p.gate_count(), 1u);
  EXPECT_EQ(std::get<CZGate>(p.gates()[0]), (CZGate{0, 1}));
  EXPECT_EQ(p.width(), 2);
}

TEST(ParseProgram, RotationQuarterTurn) {
  const Program p = parse_program("R 0 64 0 0 8");
  const auto& g = std::get<RotationGate>(p.gates()[0]);
  EXPECT_EQ(g.target, 0);
  EXPECT_EQ(g.k, (std::array<std::uint64_t, 3>{64, 0, 0}));
  EXPECT_EQ(g.precision, 8);
  EXPECT_DOUBLE_EQ(g.angles()[0], kPi / 2);
}

TEST(ParseProgram, CommentsAndBlankLines) {
  const Program p = parse_program("# bell\n\nR 0 0 1 0 3\n  # indented comment\nCZ 0 1\n");
  EXPECT_EQ(p.gate_count(), 2u);
}

TEST(ParseProgram, Errors) {
  EXPECT_THROW(parse_program("R 0 300 0 0 8"), ParseError);
  EXPECT_THROW(parse_program(""), ParseError);
  EXPECT_THROW(parse_program("# nothing\n"), ParseError);
  EXPECT_THROW(parse_program("CZ 1 1"), ParseError);
  EXPECT_THROW(parse_program("CZ 0"), ParseError);
  EXPECT_THROW(parse_program("R -1 0 0 0 2"), ParseError);
  EXPECT_THROW(parse_program("R 0 0 0 0 0"), ParseError);
  EXPECT_THROW(parse_program("R 0 1x 0 0 2"), ParseError);
  EXPECT_THROW(parse_program("H 0"), ParseError);
  try {
    parse_program("CZ 0 1\nR 0 4 0 0 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ProgramSize, Examples) {
  const Program cz = parse_program("CZ 0 1");
  const Program r = parse_program("R 0 1 2 3 8");
  EXPECT_EQ(program_size(cz), 1u);
  EXPECT_EQ(program_size(r), 8u);
  EXPECT_EQ(program_size(concat(cz, r)), 9u);
}

TEST(ProgramSize, AdditiveOverRandomSplits) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Program p = testing::random_program(rng, 1 + trial % 5, 30);
    if (p.gate_count() < 2) continue;
    const std::size_t cut = 1 + rng() % (p.gate_count() - 1);
    const Program head({p.gates().begin(), p.gates().begin() + cut});
    const Program tail({p.gates().begin() + cut, p.gates().end()});
    EXPECT_EQ(program_size(concat(head, tail)), program_size(head) + program_size(tail));
    EXPECT_EQ(concat(head, tail), p);
  }
}

TEST(RenderProgram, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Program p = testing::random_program(rng, 1 + trial % 6, 25, 40);
    EXPECT_EQ(parse_program(render_program(p)), p);
  }
}

TEST(ProgramUnitary, IdentityRotation) {
  const auto u = program_unitary(parse_program("R 0 0 0 0 1"));
  EXPECT_LT(max_abs_diff(u.matrix, CMatrix::Identity(2, 2)), 1e-15);
}

TEST(ProgramUnitary, XQuarterTurnIsMinusIX) {
  const auto u = program_unitary(parse_program("R 0 64 0 0 8"));
  Mat2 expected;
  expected << 0, -kI, -kI, 0;
  EXPECT_LT(max_abs_diff(u.matrix, expected), 1e-15);
}

TEST(ProgramUnitary, CZIsDiagonal) {
  const auto u = program_unitary(parse_program("CZ 0 1"));
  CMatrix expected = CMatrix::Identity(4, 4);
  expected(3, 3) = -1;
  EXPECT_LT(max_abs_diff(u.matrix, expected), 0.0 + 1e-15);
  EXPECT_LT(max_abs_diff(u.matrix * u.matrix, CMatrix::Identity(4, 4)), 1e-15);
}

TEST(ProgramUnitary, QubitZeroIsMostSignificant) {
  // X on qubit 0 of two maps |00> (index 0) to |10> (index 2).
  const auto u = program_unitary(parse_program("R 0 1 0 0 2\nR 1 0 0 0 1"));
  EXPECT_NEAR(std::abs(u.matrix(2, 0)), 1.0, 1e-15);
}

TEST(RotationMatrix, MatchesSeriesExponential) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector3d theta(angle(rng), angle(rng), angle(rng));
    const Mat2 generator = -kI * (theta[0] * pauli_x() + theta[1] * pauli_y() + theta[2] * pauli_z());
    const Mat2 closed = rotation_matrix(theta);
    EXPECT_LT(max_abs_diff(closed, testing::matrix_exp(generator)), 1e-12);
    EXPECT_LT(max_abs_diff(closed.adjoint() * closed, Mat2::Identity()), 1e-12);
  }
}

TEST(ProgramUnitary, ConcatenationIsProduct) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + trial % 4;
    const Program a = testing::random_program(rng, w, 10);
    const Program b = testing::random_program(rng, w, 10);
    const auto ua = program_unitary(a);
    const auto ub = program_unitary(b);
    const auto uab = program_unitary(concat(a, b));
    EXPECT_LT((uab.matrix - ub.matrix * ua.matrix).norm(), 1e-10);
  }
}

TEST(ProgramUnitary, WidthGuard) {
  EXPECT_THROW(program_unitary(parse_program("R 12 0 0 0 1")), Error);
  EXPECT_NO_THROW(program_unitary(parse_program("R 0 1 0 0 2"), 3));
}

TEST(UnitaryDescriptor, RejectsNonUnitary) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_THROW(UnitaryDescriptor(1, m), Error);
  EXPECT_THROW(UnitaryDescriptor(2, CMatrix::Identity(2, 2)), Error);
}

TEST(ProgramFidelity, SelfAndPhase) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Program p = testing::random_program(rng, 1 + trial % 4, 12);
    const auto u = program_unitary(p);
    EXPECT_NEAR(program_fidelity(u, p), 1.0, 1e-12);
    const UnitaryDescriptor phased(u.n, std::polar(1.0, 0.7) * u.matrix);
    EXPECT_NEAR(program_fidelity(phased, p), program_fidelity(u, p), 1e-12);
  }
}

TEST(ProgramFidelity, IdentityVersusMinusIX) {
  const UnitaryDescriptor id(1, CMatrix::Identity(2, 2));
  EXPECT_NEAR(program_fidelity(id, parse_program("R 0 64 0 0 8")), 0.0, 1e-15);
}

TEST(ProgramFidelity, PadsNarrowerSide) {
  const UnitaryDescriptor id(1, CMatrix::Identity(2, 2));
  // Identity on qubit 0 against a two-qubit identity program.
  EXPECT_NEAR(program_fidelity(id, parse_program("R 1 0 0 0 1")), 1.0, 1e-15);
  const UnitaryDescriptor cz(2, program_unitary(parse_program("CZ 0 1")).matrix);
  EXPECT_NEAR(program_fidelity(cz, parse_program("R 0 0 0 0 1")), 0.5, 1e-15);
}

}  // namespace
}  // namespace qpc

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

#include "qpc/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qpc/oneway.hpp"
#include "qpc/statevector.hpp"

namespace qpc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qpc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

constexpr const char* kBell = "# Bell-type program\nR 0 0 1 0 3\nR 1 0 1 0 3\nCZ 0 1\n";

TEST_F(CliTest, SizeCommand) {
  const auto r = run({"size", write("p.qprog", "CZ 0 1\nR 0 1 0 0 8\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "9");
  EXPECT_NE(r.out.find("rotations: 1"), std::string::npos);
  const auto j = nlohmann::json::parse(run({"size", write("q.qprog", "CZ 0 1\n"), "--json"}).out);
  EXPECT_EQ(j["size"], 1);
  EXPECT_EQ(j["cz"], 1);
}

TEST_F(CliTest, RunExactJson) {
  const auto r = run({"run", "--program", write("bell.qprog", kBell), "--input", "00", "--readout",
                      "0,1", "--exact", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto d = distribution_from_json(r.out);
  ASSERT_EQ(d.size(), 4u);
  for (const auto& [k, p] : d) EXPECT_NEAR(p, 0.25, 1e-12);
  // Canonical: re-serializing reproduces the output.
  EXPECT_EQ(distribution_json(d) + "\n", r.out);
}

TEST_F(CliTest, RunSampledIsSeeded) {
  const std::string prog = write("bell.qprog", kBell);
  const auto a = run({"run", "--program", prog, "--shots", "500", "--seed", "3", "--json"});
  const auto b = run({"run", "--program", prog, "--shots", "500", "--seed", "3", "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  int total = 0;
  const auto counts = nlohmann::json::parse(a.out);
  for (const auto& el : counts.items()) total += el.value().get<int>();
  EXPECT_EQ(total, 500);
}

TEST_F(CliTest, RunOneWayParadigm) {
  const std::string prog = write("bell.qprog", kBell);
  const auto r = run({"run", "--program", prog, "--paradigm", "oneway", "--exact", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& [k, p] : distribution_from_json(r.out)) EXPECT_NEAR(p, 0.25, 1e-10);
  const auto s = run({"run", "--program", prog, "--paradigm", "oneway", "--shots", "50", "--json"});
  ASSERT_EQ(s.code, 0) << s.err;
}

TEST_F(CliTest, CompileOneWay) {
  const std::string out = (dir_ / "pattern.json").string();
  const auto r = run({"compile", "--paradigm", "oneway", write("bell.qprog", kBell), "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto pat = oneway::pattern_from_json(ss.str());
  EXPECT_EQ(pat.steps.size(), 8u);
  EXPECT_EQ(run({"compile", "--paradigm", "adiabatic", write("b.qprog", kBell)}).code, 2);
}

TEST_F(CliTest, Grover) {
  const auto r = run({"grover", "--n", "3", "--marked", "101", "--schedule", "local", "--time", "100",
                      "--steps", "5000", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GE(j["overlap"].get<double>(), 0.99);
  EXPECT_NEAR(j["min_gap"].get<double>(), 0.353553, 1e-6);
  EXPECT_EQ(j["T"].get<double>(), 100.0);
  EXPECT_EQ(j.dump() + "\n", r.out);
  EXPECT_EQ(run({"grover", "--n", "3", "--marked", "1011", "--time", "1"}).code, 1);
}

TEST_F(CliTest, GlobalControlScript) {
  const auto script = write("s.gc", "PULSE A X\nPAIR A B SWAP\nMEASURE B\n");
  const auto r = run({"gc", "--pattern", "ABC", "--length", "6", "--script", script, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["measurements"][0]["weight"], 2);
  EXPECT_NEAR(j["distribution"]["010010"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(run({"gc", "--script", write("bad.gc", "PULSE Q X\n")}).code, 1);
}

TEST_F(CliTest, Select) {
  auto r = run({"select", "--scalability", "modular", "--addressability", "local", "--control",
                "non-adiabatic"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "One-way QC\n");
  r = run({"select", "--scalability", "monolithic", "--addressability", "local", "--control",
           "non-adiabatic", "--json"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["paradigm"], "Circuit Model");
  r = run({"select", "--scalability", "monolithic", "--addressability", "global", "--control",
           "adiabatic", "--hybrid-note"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "Global Control");
  EXPECT_NE(r.out.find("hybrid"), std::string::npos);
  EXPECT_EQ(run({"select", "--scalability", "monolithic"}).code, 2);
  EXPECT_EQ(run({"select", "--scalability", "big", "--addressability", "local", "--control",
                 "adiabatic"}).code, 2);
}

TEST_F(CliTest, SelectInteractive) {
  const auto r = run({"select", "--interactive"}, "monolithic\nlocal\nadiabatic\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Adiabatic QC"), std::string::npos);
  const auto m = run({"select", "--interactive"}, "modular\n");
  EXPECT_NE(m.out.find("One-way QC"), std::string::npos);
}

TEST_F(CliTest, Thresholds) {
  const auto r = run({"thresholds", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.size(), 8u);
  EXPECT_EQ(nlohmann::json::parse(j.dump()), j);
  EXPECT_NE(run({"thresholds"}).out.find("0.11"), std::string::npos);
}

TEST_F(CliTest, UsageAndDomainErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"teleport"}).code, 2);
  EXPECT_EQ(run({"size", "x.qprog", "--bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"size", (dir_ / "missing.qprog").string()}).code, 1);
  const auto bad = run({"size", write("bad.qprog", "R 0 300 0 0 8\n")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos);
  EXPECT_EQ(run({"run", "--program", write("cz.qprog", "CZ 0 1\n"), "--input", "0"}).code, 1);
}

}  // namespace
}  // namespace qpc

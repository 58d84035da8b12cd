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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpc/adiabatic.hpp"
#include "qpc/global_control.hpp"
#include "qpc/oneway.hpp"
#include "qpc/program.hpp"
#include "qpc/selector.hpp"
#include "qpc/statevector.hpp"

namespace qpc {

namespace {

using nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_distribution(const Distribution& d, bool as_json, std::ostream& out) {
  if (as_json) {
    out << distribution_json(d) << '\n';
    return;
  }
  for (const auto& [k, p] : d) out << k << ' ' << p << '\n';
}

void print_counts(const Counts& c, bool as_json, std::ostream& out) {
  if (as_json) {
    json j = json::object();
    for (const auto& [k, n] : c) j[k] = n;
    out << j.dump() << '\n';
    return;
  }
  for (const auto& [k, n] : c) out << k << ' ' << n << '\n';
}

struct RunOptions {
  std::string program;
  std::string input;
  std::string readout;
  std::string paradigm = "circuit";
  bool exact = false;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  bool json = false;
};

int cmd_run(const RunOptions& o, std::ostream& out) {
  const Program p = load_program(o.program);
  const std::string input = o.input.empty() ? std::string(p.width(), '0') : o.input;
  const int n = static_cast<int>(input.size());
  const ReadoutSpec readout = o.readout.empty() ? ReadoutSpec::all(n) : ReadoutSpec::parse(o.readout, n);

  if (o.paradigm == "circuit") {
    const Distribution d = exact_distribution(p, input, readout);
    if (o.exact) {
      print_distribution(d, o.json, out);
    } else {
      print_counts(sample(d, o.shots, o.seed), o.json, out);
    }
    return 0;
  }
  if (o.paradigm != "oneway") throw UsageError("--paradigm must be circuit or oneway");
  if (n != p.width()) throw Error("one-way runs need an input exactly as wide as the program");
  const auto pat = oneway::compile_to_pattern(p);
  if (o.exact) {
    print_distribution(oneway::simulate_pattern(pat, input, readout), o.json, out);
    return 0;
  }
  if (o.shots == 0) throw Error("shots must be positive");
  // One seeded branch per shot.
  std::mt19937_64 rng(o.seed);
  Counts counts;
  const std::size_t m = readout.size();
  for (std::size_t key = 0; key < (std::size_t{1} << m); ++key) {
    std::string s(m, '0');
    for (std::size_t j = 0; j < m; ++j) {
      if (key >> (m - 1 - j) & 1) s[j] = '1';
    }
    counts[s] = 0;
  }
  for (std::uint64_t s = 0; s < o.shots; ++s) {
    const Distribution d = oneway::simulate_pattern(pat, input, readout,
                                                    oneway::BranchPolicy::SeededRandom, rng());
    for (const auto& [k, c] : sample(d, 1, rng())) counts[k] += c;
  }
  print_counts(counts, o.json, out);
  return 0;
}

int cmd_size(const std::string& file, bool as_json, std::ostream& out) {
  const Program p = load_program(file);
  const auto c = census(p);
  if (as_json) {
    json j{{"size", program_size(p)}, {"width", p.width()}, {"rotations", c.rotations},
           {"cz", c.cz}, {"gates", p.gate_count()}};
    out << j.dump() << '\n';
  } else {
    out << program_size(p) << '\n'
        << "gates: " << p.gate_count() << " (rotations: " << c.rotations << ", cz: " << c.cz
        << ")\n"
        << "width: " << p.width() << '\n';
  }
  return 0;
}

int cmd_compile(const std::string& paradigm, const std::string& file, const std::string& output,
                std::ostream& out) {
  if (paradigm != "oneway") throw UsageError("only --paradigm oneway can be compiled");
  const auto pat = oneway::compile_to_pattern(load_program(file));
  const std::string text = oneway::pattern_json(pat);
  if (output.empty() || output == "-") {
    out << text << '\n';
  } else {
    std::ofstream f(output);
    if (!f) throw Error("cannot write " + output);
    f << text << '\n';
  }
  return 0;
}

struct GroverOptions {
  int n = 0;
  std::string marked;
  std::string schedule = "local";
  double time = 0.0;
  int steps = 0;
  bool json = false;
};

int cmd_grover(const GroverOptions& o, std::ostream& out) {
  const adiabatic::GroverInstance inst(o.n, o.marked);
  const adiabatic::Schedule sched{adiabatic::parse_schedule_kind(o.schedule), o.time,
                                  o.steps > 0 ? o.steps : adiabatic::default_steps(o.time)};
  const auto report = adiabatic::evolve(inst, sched);
  const double gap = adiabatic::min_gap(inst).gap;
  if (o.json) {
    out << json{{"overlap", report.overlap}, {"min_gap", gap}, {"T", o.time}}.dump() << '\n';
  } else {
    out << "overlap " << report.overlap << '\n'
        << "min_gap " << gap << '\n'
        << "T " << o.time << '\n';
  }
  return 0;
}

struct GcOptions {
  std::string pattern = "ABC";
  int length = 6;
  std::string boundary = "open";
  std::string script;
  std::uint64_t seed = 0;
  bool json = false;
};

int cmd_gc(const GcOptions& o, std::ostream& out) {
  gc::Boundary b;
  if (o.boundary == "open") {
    b = gc::Boundary::Open;
  } else if (o.boundary == "periodic") {
    b = gc::Boundary::Periodic;
  } else {
    throw UsageError("--boundary must be open or periodic");
  }
  const gc::CellChain chain(o.pattern, o.length, b);
  const auto result = gc::run_script(chain, read_file(o.script), o.seed);
  const Distribution d = distribution(result.chain.state(), ReadoutSpec::all(o.length));
  if (o.json) {
    json measurements = json::array();
    for (const auto& e : result.events) {
      if (e.weight >= 0) measurements.push_back({{"species", std::string(1, e.species)}, {"weight", e.weight}});
    }
    json dist = json::object();
    for (const auto& [k, p] : d) {
      if (p > 1e-15) dist[k] = p;
    }
    out << json{{"measurements", measurements}, {"distribution", dist}}.dump() << '\n';
  } else {
    for (const auto& e : result.events) {
      if (e.weight >= 0) out << "MEASURE " << e.species << " -> weight " << e.weight << '\n';
    }
    for (const auto& [k, p] : d) {
      if (p > 1e-15) out << k << ' ' << p << '\n';
    }
  }
  return 0;
}

std::string ask(std::istream& in, std::ostream& out, const std::string& question) {
  out << question << ' ' << std::flush;
  std::string answer;
  if (!std::getline(in, answer)) throw UsageError("no answer given");
  answer.erase(0, answer.find_first_not_of(" \t"));
  answer.erase(answer.find_last_not_of(" \t\r") + 1);
  return answer;
}

struct SelectOptions {
  std::string scalability;
  std::string addressability;
  std::string control;
  bool interactive = false;
  bool hybrid_note = false;
  bool json = false;
};

int cmd_select(SelectOptions o, std::istream& in, std::ostream& out) {
  if (o.interactive) {
    o.scalability = ask(in, out, "Scalability (monolithic/modular)?");
    if (o.scalability == "modular") {
      o.addressability = "local";
      o.control = "non-adiabatic";
    } else {
      o.addressability = ask(in, out, "Addressability (local/global)?");
      o.control = o.addressability == "global" ? "non-adiabatic"
                                                : ask(in, out, "Control (adiabatic/non-adiabatic)?");
    }
  } else if (o.scalability.empty() || o.addressability.empty() || o.control.empty()) {
    throw UsageError("select needs --scalability, --addressability and --control (or --interactive)");
  }
  select::DeviceProfile profile{};
  try {
    profile = {select::parse_scalability(o.scalability), select::parse_addressability(o.addressability),
               select::parse_control(o.control)};
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto paradigm = select::recommend(profile);
  if (o.json) {
    json j{{"paradigm", select::display_name(paradigm)}, {"key", select::key(paradigm)}};
    if (o.hybrid_note) j["note"] = select::hybrid_note();
    out << j.dump() << '\n';
  } else {
    out << select::display_name(paradigm) << '\n';
    if (o.hybrid_note) out << select::hybrid_note() << '\n';
  }
  return 0;
}

int cmd_thresholds(bool as_json, std::ostream& out) {
  const auto& table = select::threshold_table();
  if (as_json) {
    json arr = json::array();
    for (const auto& e : table) {
      arr.push_back({{"paradigm", e.paradigm}, {"protocol", e.protocol}, {"low", e.low},
                     {"high", e.high}, {"provenance", e.provenance}});
    }
    out << arr.dump() << '\n';
    return 0;
  }
  for (const auto& e : table) {
    out << e.paradigm << "\t" << e.protocol << "\t";
    if (e.low == e.high) {
      out << e.low;
    } else {
      out << e.low << " - " << e.high;
    }
    out << "\t[" << e.provenance << "]\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"qpc: quantum program IR, simulators and paradigm selection"};
  app.name("qpc");
  app.require_subcommand(1, 1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "simulate a .qprog program");
  run_cmd->add_option("--program", run.program, "program file")->required();
  run_cmd->add_option("--input", run.input, "input bit string (default all zeros)");
  run_cmd->add_option("--readout", run.readout, "comma-separated qubits to read (default all)");
  run_cmd->add_option("--paradigm", run.paradigm, "circuit or oneway");
  run_cmd->add_flag("--exact", run.exact, "print the exact output distribution");
  run_cmd->add_option("--shots", run.shots, "samples when not exact");
  run_cmd->add_option("--seed", run.seed, "sampler seed");
  run_cmd->add_flag("--json", run.json, "JSON output");

  std::string size_file;
  bool size_json = false;
  auto* size_cmd = app.add_subcommand("size", "program size and gate census");
  size_cmd->add_option("file", size_file)->required();
  size_cmd->add_flag("--json", size_json);

  std::string compile_paradigm, compile_file, compile_out;
  auto* compile_cmd = app.add_subcommand("compile", "compile to another paradigm");
  compile_cmd->add_option("--paradigm", compile_paradigm)->required();
  compile_cmd->add_option("file", compile_file)->required();
  compile_cmd->add_option("-o,--output", compile_out, "output file (default stdout)");

  GroverOptions grover;
  auto* grover_cmd = app.add_subcommand("grover", "adiabatic Grover search");
  grover_cmd->add_option("--n", grover.n)->required();
  grover_cmd->add_option("--marked", grover.marked)->required();
  grover_cmd->add_option("--schedule", grover.schedule)->check(CLI::IsMember({"linear", "local"}));
  grover_cmd->add_option("--time", grover.time)->required();
  grover_cmd->add_option("--steps", grover.steps);
  grover_cmd->add_flag("--json", grover.json);

  GcOptions gco;
  auto* gc_cmd = app.add_subcommand("gc", "run a global-control script on a cell chain");
  gc_cmd->add_option("--pattern", gco.pattern);
  gc_cmd->add_option("--length", gco.length);
  gc_cmd->add_option("--boundary", gco.boundary);
  gc_cmd->add_option("--script", gco.script)->required();
  gc_cmd->add_option("--seed", gco.seed);
  gc_cmd->add_flag("--json", gco.json);

  SelectOptions sel;
  auto* select_cmd = app.add_subcommand("select", "recommend a paradigm for a device");
  select_cmd->add_option("--scalability", sel.scalability, "monolithic or modular");
  select_cmd->add_option("--addressability", sel.addressability, "local or global");
  select_cmd->add_option("--control", sel.control, "adiabatic or non-adiabatic");
  select_cmd->add_flag("--interactive", sel.interactive);
  select_cmd->add_flag("--hybrid-note", sel.hybrid_note);
  select_cmd->add_flag("--json", sel.json);

  bool thresholds_json = false;
  auto* thresholds_cmd = app.add_subcommand("thresholds", "fault-tolerance threshold table");
  thresholds_cmd->add_flag("--json", thresholds_json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(run, out);
    if (*size_cmd) return cmd_size(size_file, size_json, out);
    if (*compile_cmd) return cmd_compile(compile_paradigm, compile_file, compile_out, out);
    if (*grover_cmd) return cmd_grover(grover, out);
    if (*gc_cmd) return cmd_gc(gco, out);
    if (*select_cmd) return cmd_select(sel, in, out);
    if (*thresholds_cmd) return cmd_thresholds(thresholds_json, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qpc

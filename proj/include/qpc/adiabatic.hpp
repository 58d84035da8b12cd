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

#include <string>
#include <string_view>
#include <vector>

#include "qpc/types.hpp"

namespace qpc::adiabatic {

/// Unstructured search over N = 2^n strings with one marked string.
class GroverInstance {
 public:
  GroverInstance(int n, std::string marked);

  int n() const { return n_; }
  double dim() const { return static_cast<double>(Eigen::Index{1} << n_); }
  const std::string& marked() const { return marked_; }
  Eigen::Index marked_index() const;

 private:
  int n_;
  std::string marked_;
};

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 14;
inline constexpr int kMaxDenseQubits = 12;

enum class ScheduleKind { Linear, Local };

ScheduleKind parse_schedule_kind(std::string_view name);
std::string to_string(ScheduleKind kind);

struct Schedule {
  ScheduleKind kind = ScheduleKind::Local;
  double total_time = 1.0;
  int steps = 1000;
};

void validate(const Schedule& s);

/// H(lambda) = (1 - lambda)(I - |psi0><psi0|) + lambda (I - |s><s|), dense.
Eigen::MatrixXd hamiltonian(const GroverInstance& inst, double lambda);

/// H(lambda) restricted to the invariant plane, in the orthonormal basis
/// {|s>, |s_perp>} where |psi0> = |s>/sqrt(N) + sqrt(1 - 1/N)|s_perp>.
Eigen::Matrix2d reduced_hamiltonian(const GroverInstance& inst, double lambda);

/// E1 - E0 of H(lambda). Off the invariant plane H acts as the identity.
double spectral_gap(const GroverInstance& inst, double lambda);

struct GapMinimum {
  double gap;
  double lambda;
};

/// Grid scan over [0, 1] followed by golden-section refinement.
GapMinimum min_gap(const GroverInstance& inst, int grid_points = 1001);

/// lambda at each of the steps + 1 equally spaced times.
std::vector<double> schedule_lambdas(const GroverInstance& inst, const Schedule& sched);

/// lambda(t) sampled at arbitrary fractions t/T in [0, 1].
std::vector<double> schedule_at(const GroverInstance& inst, ScheduleKind kind,
                                const std::vector<double>& fractions);

struct EvolutionReport {
  double overlap = 0.0;  // |<s|psi(T)>|^2
  double min_gap = 0.0;  // smallest gap at the step midpoints
  double norm = 1.0;
  std::vector<double> lambda_trace;
};

/// Midpoint-propagator evolution inside the invariant plane.
EvolutionReport evolve(const GroverInstance& inst, const Schedule& sched);

/// Same stepping on the full 2^n space with dense exponentials (n <= 8).
EvolutionReport evolve_dense(const GroverInstance& inst, const Schedule& sched);

inline constexpr double kMaxRuntime = 1e6;

/// Steps used by runtime searches for a given total time.
int default_steps(double total_time);

/// Smallest T (doubling, then bisection on the first bracket) for which the
/// final overlap reaches `target`.
double runtime_to_target(const GroverInstance& inst, ScheduleKind kind, double target = 0.9);

}  // namespace qpc::adiabatic

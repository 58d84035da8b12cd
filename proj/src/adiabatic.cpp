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

#include "qpc/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpc/program.hpp"

namespace qpc::adiabatic {

GroverInstance::GroverInstance(int n, std::string marked) : n_(n), marked_(std::move(marked)) {
  if (n_ < kMinQubits || n_ > kMaxQubits) {
    throw Error("Grover instance needs " + std::to_string(kMinQubits) + " <= n <= " +
                std::to_string(kMaxQubits));
  }
  if (static_cast<int>(marked_.size()) != n_) throw Error("marked string must have n bits");
  for (char c : marked_) {
    if (c != '0' && c != '1') throw Error("marked string must be binary");
  }
}

Eigen::Index GroverInstance::marked_index() const {
  Eigen::Index idx = 0;
  for (char c : marked_) idx = (idx << 1) | (c == '1' ? 1 : 0);
  return idx;
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "local") return ScheduleKind::Local;
  throw Error("unknown schedule '" + std::string(name) + "'");
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::Linear ? "linear" : "local";
}

void validate(const Schedule& s) {
  if (!(s.total_time > 0.0) || !std::isfinite(s.total_time)) {
    throw Error("total time must be positive");
  }
  if (s.steps < 10) throw Error("schedule needs at least 10 steps");
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("lambda must lie in [0, 1]");
}

}  // namespace

Eigen::MatrixXd hamiltonian(const GroverInstance& inst, double lambda) {
  check_lambda(lambda);
  if (inst.n() > kMaxDenseQubits) throw Error("dense Hamiltonian limited to n <= 12");
  const Eigen::Index dim = Eigen::Index{1} << inst.n();
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim);
  h -= (1.0 - lambda) * uniform * uniform.transpose();
  h(inst.marked_index(), inst.marked_index()) -= lambda;
  return h;
}

Eigen::Matrix2d reduced_hamiltonian(const GroverInstance& inst, double lambda) {
  check_lambda(lambda);
  const double a2 = 1.0 / inst.dim();
  const double b2 = 1.0 - a2;
  const double ab = std::sqrt(a2 * b2);
  Eigen::Matrix2d h0;
  h0 << b2, -ab, -ab, a2;
  Eigen::Matrix2d hf;
  hf << 0, 0, 0, 1;
  return (1.0 - lambda) * h0 + lambda * hf;
}

double spectral_gap(const GroverInstance& inst, double lambda) {
  const Eigen::Matrix2d h = reduced_hamiltonian(inst, lambda);
  const double mean = 0.5 * (h(0, 0) + h(1, 1));
  const double radius = std::hypot(0.5 * (h(0, 0) - h(1, 1)), h(0, 1));
  const double e0 = mean - radius;
  // The complement of the plane (dimension N - 2 >= 2) sits at energy 1.
  const double e1 = std::min(mean + radius, 1.0);
  return e1 - e0;
}

GapMinimum min_gap(const GroverInstance& inst, int grid_points) {
  if (grid_points < 3) throw Error("gap scan needs at least 3 points");
  const double h = 1.0 / (grid_points - 1);
  int best = 0;
  double best_gap = spectral_gap(inst, 0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double g = spectral_gap(inst, i * h);
    if (g < best_gap) {
      best_gap = g;
      best = i;
    }
  }
  double lo = std::max(0.0, (best - 1) * h);
  double hi = std::min(1.0, (best + 1) * h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = spectral_gap(inst, x1);
  double f2 = spectral_gap(inst, x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = spectral_gap(inst, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = spectral_gap(inst, x2);
    }
  }
  GapMinimum result{best_gap, best * h};
  const double mid = 0.5 * (lo + hi);
  const double g = spectral_gap(inst, mid);
  if (g < result.gap) result = {g, mid};
  return result;
}

namespace {

// Cumulative integral of 1 / g(lambda)^2 on a uniform grid; the local
// schedule spends time proportional to it.
struct LocalTable {
  std::vector<double> lambda;
  std::vector<double> cumulative;

  explicit LocalTable(const GroverInstance& inst, int intervals = 1 << 16) {
    lambda.resize(intervals + 1);
    cumulative.resize(intervals + 1);
    const double h = 1.0 / intervals;
    auto f = [&](double x) {
      const double g = spectral_gap(inst, x);
      return 1.0 / (g * g);
    };
    double prev = f(0.0);
    cumulative[0] = 0.0;
    lambda[0] = 0.0;
    for (int i = 1; i <= intervals; ++i) {
      const double x = std::min(1.0, i * h);
      const double cur = f(x);
      cumulative[i] = cumulative[i - 1] + h / 6.0 * (prev + 4.0 * f(x - 0.5 * h) + cur);
      lambda[i] = x;
      prev = cur;
    }
  }

  double invert(double fraction) const {
    const double target = fraction * cumulative.back();
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.begin()) return 0.0;
    if (it == cumulative.end()) return 1.0;
    const auto i = static_cast<std::size_t>(it - cumulative.begin());
    const double span = cumulative[i] - cumulative[i - 1];
    const double w = span > 0 ? (target - cumulative[i - 1]) / span : 0.0;
    return lambda[i - 1] + w * (lambda[i] - lambda[i - 1]);
  }
};

}  // namespace

std::vector<double> schedule_at(const GroverInstance& inst, ScheduleKind kind,
                                const std::vector<double>& fractions) {
  std::vector<double> out;
  out.reserve(fractions.size());
  if (kind == ScheduleKind::Linear) {
    for (double f : fractions) out.push_back(std::clamp(f, 0.0, 1.0));
    return out;
  }
  const LocalTable table(inst);
  for (double f : fractions) out.push_back(table.invert(std::clamp(f, 0.0, 1.0)));
  return out;
}

std::vector<double> schedule_lambdas(const GroverInstance& inst, const Schedule& sched) {
  validate(sched);
  std::vector<double> fractions(sched.steps + 1);
  for (int k = 0; k <= sched.steps; ++k) fractions[k] = double(k) / sched.steps;
  fractions.back() = 1.0;
  return schedule_at(inst, sched.kind, fractions);
}

namespace {

// Boundary and midpoint lambdas interleaved: index 2k is t_k, 2k+1 is the
// midpoint of step k.
std::vector<double> half_step_lambdas(const GroverInstance& inst, const Schedule& sched) {
  validate(sched);
  const int points = 2 * sched.steps + 1;
  std::vector<double> fractions(points);
  for (int j = 0; j < points; ++j) fractions[j] = double(j) / (points - 1);
  fractions.back() = 1.0;
  return schedule_at(inst, sched.kind, fractions);
}

}  // namespace

EvolutionReport evolve(const GroverInstance& inst, const Schedule& sched) {
  const auto lambdas = half_step_lambdas(inst, sched);
  const double dt = sched.total_time / sched.steps;
  Eigen::Vector2cd psi(std::sqrt(1.0 / inst.dim()), std::sqrt(1.0 - 1.0 / inst.dim()));
  EvolutionReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  report.lambda_trace.reserve(sched.steps + 1);
  for (int k = 0; k < sched.steps; ++k) {
    report.lambda_trace.push_back(lambdas[2 * k]);
    const double mid = lambdas[2 * k + 1];
    const Eigen::Matrix2d h = reduced_hamiltonian(inst, mid);
    report.min_gap = std::min(report.min_gap, spectral_gap(inst, mid));
    // h = c I + dx X + dz Z, so exp(-i h dt) = e^{-i c dt} exp(-i dt (dx, 0, dz) . sigma).
    const double c = 0.5 * (h(0, 0) + h(1, 1));
    const Eigen::Vector3d d(h(0, 1), 0.0, 0.5 * (h(0, 0) - h(1, 1)));
    psi = std::polar(1.0, -c * dt) * (rotation_matrix(Eigen::Vector3d(dt * d)) * psi);
  }
  report.lambda_trace.push_back(lambdas.back());
  report.norm = psi.norm();
  report.overlap = std::norm(psi[0]);
  return report;
}

EvolutionReport evolve_dense(const GroverInstance& inst, const Schedule& sched) {
  if (inst.n() > 8) throw Error("dense evolution limited to n <= 8");
  const auto lambdas = half_step_lambdas(inst, sched);
  const double dt = sched.total_time / sched.steps;
  const Eigen::Index dim = Eigen::Index{1} << inst.n();
  CVector psi = CVector::Constant(dim, 1.0 / std::sqrt(double(dim)));
  EvolutionReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < sched.steps; ++k) {
    report.lambda_trace.push_back(lambdas[2 * k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hamiltonian(inst, lambdas[2 * k + 1]));
    const Eigen::VectorXd& e = eig.eigenvalues();
    report.min_gap = std::min(report.min_gap, e[1] - e[0]);
    const CMatrix v = eig.eigenvectors().cast<Complex>();
    CVector phases(dim);
    for (Eigen::Index i = 0; i < dim; ++i) phases[i] = std::polar(1.0, -e[i] * dt);
    psi = v * (phases.asDiagonal() * (v.adjoint() * psi));
  }
  report.lambda_trace.push_back(lambdas.back());
  report.norm = psi.norm();
  report.overlap = std::norm(psi[inst.marked_index()]);
  return report;
}

int default_steps(double total_time) {
  return static_cast<int>(std::max(2000.0, std::ceil(20.0 * total_time)));
}

double runtime_to_target(const GroverInstance& inst, ScheduleKind kind, double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw Error("target overlap must lie in (0, 1); 1 is only reached asymptotically");
  }
  auto overlap_at = [&](double t) {
    return evolve(inst, Schedule{kind, t, default_steps(t)}).overlap;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (overlap_at(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxRuntime) throw Error("runtime search exceeded T = 1e6");
  }
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (overlap_at(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace qpc::adiabatic

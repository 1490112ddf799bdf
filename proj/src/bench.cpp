// Copyright 2026 The qdecomp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdecomp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qdecomp::bench {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ParamTree::ParamTree(std::span<const double> prob, std::span<const double> amp) {
  if (prob.size() < 2 || (prob.size() & (prob.size() - 1)) != 0)
    throw BenchError("probability list length must be a power of two >= 2");
  if (amp.size() != prob.size())
    throw BenchError("probability and phase lists differ in length");
  double total = 0.0;
  for (double p : prob) {
    if (p < 0.0) throw BenchError("probabilities must be non-negative");
    total += p;
  }
  std::vector<double> norm(prob.begin(), prob.end());
  if (total > 0.0)
    for (double& p : norm) p /= total;
  const std::size_t half = norm.size() / 2;
  double right_mass = 0.0;
  for (std::size_t i = half; i < norm.size(); ++i) right_mass += norm[i];
  value = 2.0 * std::asin(std::sqrt(std::clamp(right_mass, 0.0, 1.0)));
  if (prob.size() > 2) {
    const std::span<const double> norm_span(norm);
    left = std::make_unique<ParamTree>(norm_span.first(half), amp.first(half));
    right = std::make_unique<ParamTree>(norm_span.subspan(half),
                                        amp.subspan(half));
  } else {
    phase0 = amp[0];
    phase1 = amp[1];
  }
}

int grover_steps(int n) {
  return static_cast<int>((kPi / 4.0) * std::sqrt(std::pow(2.0, n)));
}

Circuit grover_circuit(int n, QpuSpec qpu) {
  if (n < 2) throw BenchError("grover needs at least 2 qubits");
  Process p(qpu);
  auto qs = p.allocate(n);
  for (const auto& q : qs) p.apply(Gate::h(), q);
  const std::vector<QubitRef> controls(qs.begin(), qs.end() - 1);
  const QubitRef last = qs.back();
  const auto oracle = [&] {
    p.with_control(controls, [&] { p.apply(Gate::z(), last); });
  };
  const int steps = grover_steps(n);
  for (int s = 0; s < steps; ++s) {
    oracle();
    p.with_around(
        [&] {
          for (const auto& q : qs) {
            p.apply(Gate::h(), q);
            p.apply(Gate::x(), q);
          }
        },
        oracle);
  }
  p.measure(qs);
  return p.take();
}

namespace {

void prepare(Process& p, std::span<const QubitRef> qubits, const ParamTree& tree) {
  const QubitRef head = qubits[0];
  const auto tail = qubits.subspan(1);
  p.apply(Gate::ry(tree.value), head);
  if (tree.is_leaf()) {
    p.with_around([&] { p.apply(Gate::x(), head); },
                  [&] { p.apply(Gate::phase(tree.phase0), head); });
    p.apply(Gate::phase(tree.phase1), head);
    return;
  }
  p.with_around([&] { p.apply(Gate::x(), head); },
                [&] {
                  p.with_control({head}, [&] { prepare(p, tail, *tree.left); });
                });
  p.with_control({head}, [&] { prepare(p, tail, *tree.right); });
}

}  // namespace

Circuit state_prep_circuit(std::span<const double> probabilities,
                           std::span<const double> phases, QpuSpec qpu) {
  const ParamTree tree(probabilities, phases);
  int n = 0;
  while ((1u << n) < probabilities.size()) ++n;
  Process p(qpu);
  auto qs = p.allocate(n);
  prepare(p, qs, tree);
  return p.take();
}

BenchReport run_suite(Algorithm algorithm, int n_min, int n_max, QpuSpec qpu,
                      compiler::Policy policy, std::uint64_t seed) {
  if (n_min > n_max || n_min < (algorithm == Algorithm::Grover ? 2 : 1))
    throw BenchError("invalid qubit range");
  if (n_max > qpu.total) throw BenchError("range exceeds the QPU capacity");
  BenchReport report;
  report.algorithm = algorithm;
  report.policy = policy;
  report.qpu_total = qpu.total;
  report.seed = seed;
  for (int n = n_min; n <= n_max; ++n) {
    Circuit circuit(qpu);
    if (algorithm == Algorithm::Grover) {
      circuit = grover_circuit(n, qpu);
    } else {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
      std::uniform_real_distribution<double> uprob(0.05, 1.0);
      std::uniform_real_distribution<double> uphase(-kPi, kPi);
      const std::size_t len = 1ull << n;
      std::vector<double> prob(len), phase(len);
      for (auto& v : prob) v = uprob(rng);
      for (auto& v : phase) v = uphase(rng);
      circuit = state_prep_circuit(prob, phase, qpu);
    }
    compiler::CompileOptions opt;
    opt.policy = policy;
    opt.store_instructions = false;  // counting only
    const auto result = compiler::compile(circuit, qpu, opt);
    BenchRow row;
    row.n_qubits = n;
    row.total = result.report.stats.cnot_total;
    for (const auto& [family, count] : result.report.stats.per_algorithm)
      if (count > 0) row.per_algorithm[family] = count;
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::vector<DecompFamily> report_families(const BenchReport& report) {
  std::vector<DecompFamily> families;
  for (const auto& row : report.rows)
    for (const auto& [f, c] : row.per_algorithm)
      if (std::find(families.begin(), families.end(), f) == families.end())
        families.push_back(f);
  std::sort(families.begin(), families.end());
  return families;
}

}  // namespace

std::string report_table(const BenchReport& report) {
  const auto families = report_families(report);
  std::ostringstream os;
  os << "qubits";
  for (auto f : families) os << '\t' << family_name(f);
  os << "\ttotal\n";
  for (const auto& row : report.rows) {
    os << row.n_qubits;
    for (auto f : families) {
      auto it = row.per_algorithm.find(f);
      if (it == row.per_algorithm.end())
        os << "\t--";
      else
        os << '\t' << it->second;
    }
    os << '\t' << row.total << '\n';
  }
  return os.str();
}

std::string report_csv(const BenchReport& report) {
  const auto families = report_families(report);
  std::ostringstream os;
  os << "qubits";
  for (auto f : families) os << ',' << family_name(f);
  os << ",total\n";
  for (const auto& row : report.rows) {
    os << row.n_qubits;
    for (auto f : families) {
      auto it = row.per_algorithm.find(f);
      os << ',' << (it == row.per_algorithm.end() ? 0 : it->second);
    }
    os << ',' << row.total << '\n';
  }
  return os.str();
}

}  // namespace qdecomp::bench

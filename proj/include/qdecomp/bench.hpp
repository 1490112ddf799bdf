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

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qdecomp/compiler.hpp"
#include "qdecomp/process.hpp"

namespace qdecomp::bench {

struct BenchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Binary tree of rotation angles for amplitude encoding: value is the
/// Ry angle splitting the probability mass between the two halves; leaves
/// carry the two amplitude phases.
struct ParamTree {
  double value = 0.0;
  std::unique_ptr<ParamTree> left;
  std::unique_ptr<ParamTree> right;
  double phase0 = 0.0;
  double phase1 = 0.0;

  ParamTree(std::span<const double> prob, std::span<const double> amp);
  bool is_leaf() const { return !left && !right; }
};

/// Grover search marking |1...1>: H layer, then floor(pi/4 * sqrt(2^n))
/// iterations of oracle + diffusion, terminal measurement.
Circuit grover_circuit(int n, QpuSpec qpu);
int grover_steps(int n);

/// Fig-style recursive state preparation for sum_k sqrt(r_k) e^{i theta_k} |k>.
Circuit state_prep_circuit(std::span<const double> probabilities,
                           std::span<const double> phases, QpuSpec qpu);

enum class Algorithm : std::uint8_t { Grover, StatePrep };

struct BenchRow {
  int n_qubits = 0;
  std::map<DecompFamily, std::uint64_t> per_algorithm;
  std::uint64_t total = 0;
};

struct BenchReport {
  Algorithm algorithm = Algorithm::Grover;
  compiler::Policy policy = compiler::Policy::Auto;
  int qpu_total = 16;
  std::uint64_t seed = 0;  // RNG seed for state-prep inputs
  std::vector<BenchRow> rows;
};

/// Compiles one instance per n in [n_min, n_max] (counting only) and
/// aggregates per-family CNOT counts. State-prep probabilities/phases are
/// drawn from a seeded RNG recorded in the report.
BenchReport run_suite(Algorithm algorithm, int n_min, int n_max, QpuSpec qpu,
                      compiler::Policy policy, std::uint64_t seed = 2026);

std::string report_table(const BenchReport& report);
std::string report_csv(const BenchReport& report);

}  // namespace qdecomp::bench

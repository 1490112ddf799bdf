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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qdecomp/circuit.hpp"

namespace qdecomp::sim {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 13;
inline constexpr double kDefaultTol = 1e-9;

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EquivalenceReport {
  bool equal = false;
  double phase = 0.0;  // V approx exp(i*phase) * U
  double max_abs_deviation = 0.0;
};

/// Applies one instruction to a state in place. Qubit 0 is the most
/// significant bit of the basis index; `wire_of` maps a QubitRef to its
/// wire position.
void apply_instruction(const Instruction& ins, Vector& state,
                       const std::function<int(QubitRef)>& wire_of, int n_qubits);

/// Full 2^k x 2^k unitary of a gate-only circuit in program order.
/// `qubit_order` lists the wires most-significant first; when empty, main
/// qubits 0..total-1 are used. Throws SimError on measurement or k > 13.
Matrix circuit_unitary(const Circuit& circuit,
                       std::vector<QubitRef> qubit_order = {});

/// Statevector after running the gate portion of a circuit on |0...0>
/// (terminal measurement records are ignored).
Vector statevector(const Circuit& circuit, std::vector<QubitRef> qubit_order = {});

/// Aligns V's global phase against U at U's largest-magnitude entry and
/// reports the max elementwise deviation.
EquivalenceReport equal_up_to_global_phase(const Matrix& u, const Matrix& v,
                                           double tol = kDefaultTol);

enum class AuxState : std::uint8_t { Clean, Dirty };

struct AuxSpec {
  int count = 0;
  AuxState state = AuxState::Clean;
};

/// Ideal multi-controlled gate: controls wires [0, n_controls), target wire
/// n_controls. `gate` may carry a global phase (the controlled block is
/// exp(i*phase) * U).
Matrix controlled_gate_matrix(const Matrix2& u, int n_controls,
                              double global_phase = 0.0);

/// Verifies an emitted sequence against the ideal controlled gate.
/// Wire layout: controls, target, then aux lines.
/// Clean aux: every column with aux=|0..0> must map the main block per the
/// ideal gate and return aux to |0..0> (one common phase across the block).
/// Dirty aux: the full-space unitary must factorize as ideal (x) identity
/// up to a global phase.
EquivalenceReport verify_decomposition(const Matrix2& ideal_gate,
                                       double ideal_phase, int n_controls,
                                       const std::vector<Instruction>& emitted,
                                       AuxSpec aux, double tol = kDefaultTol);

/// Clean-aux verification running only the constrained aux=|0..0> columns
/// as statevectors; much faster than the full-matrix route on wide
/// instances. Same contract as verify_decomposition with Clean aux.
EquivalenceReport verify_decomposition_clean_fast(
    const Matrix2& ideal_gate, double ideal_phase, int n_controls,
    const std::vector<Instruction>& emitted, int aux_count,
    double tol = kDefaultTol);

/// Unitary of a bare instruction list over wires [0, n_qubits); every
/// referenced qubit must be Main with index < n_qubits.
Matrix instructions_unitary(const std::vector<Instruction>& instructions,
                            int n_qubits);

}  // namespace qdecomp::sim

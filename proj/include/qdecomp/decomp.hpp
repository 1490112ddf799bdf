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

#include <functional>
#include <span>
#include <vector>

#include "qdecomp/instruction.hpp"

namespace qdecomp::decomp {

struct DecompError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instruction consumer. Decomposition emitters stream their output so that
/// million-gate expansions never have to be materialized.
using Sink = std::function<void(Instruction&&)>;

/// Collects into a vector; convenience for tests and the standalone ops.
Sink collect(std::vector<Instruction>& out);

using Wires = std::span<const QubitRef>;

// ---------------------------------------------------------------------------
// Single-qubit factorizations

/// U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta). The gamma in {0, pi}
/// degeneracy is resolved by fixing delta = 0.
struct ZYZFactors {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

ZYZFactors zyz_decompose(const Matrix2& u);
Matrix2 zyz_reconstruct(const ZYZFactors& f);

/// U = V D V^dag with D = (A^dag X A X)^2 diagonal and A = Rz(a_angle).
struct SU2Factors {
  Matrix2 v;
  Matrix2 d;
  double a_angle = 0;  // A = Rz(a_angle)
};

/// Eigenfactorization of a special unitary. Throws DecompError if
/// |det(u) - 1| > 1e-12.
SU2Factors su2_factorize(const Matrix2& u);

/// Principal square root of a 2x2 unitary.
Matrix2 principal_sqrt(const Matrix2& u);

// ---------------------------------------------------------------------------
// Decomposition emitters. Wire arguments are explicit; aux wires may be
// fresh Aux refs (compiler) or plain mains (tests). Every emitted
// instruction carries `tag`.

/// Single-controlled U(2): C, CX, B, CX, A on the target plus a phase gate
/// on the control. Exactly 2 CNOTs (0 when the gate is a pure phase).
/// `phase` is an extra global phase multiplied onto u.
void emit_cu2(const Matrix2& u, double phase, QubitRef control, QubitRef target,
              DecompFamily tag, const Sink& sink);

/// Single-qubit emission of a unitary as Rz/Ry/Rz rotations; the global
/// phase of u is dropped (unobservable without controls).
void emit_unitary_1q(const Matrix2& u, QubitRef target, DecompFamily tag,
                     const Sink& sink);

/// Margolus gate: Toffoli up to a relative phase on one basis state,
/// 3 CNOTs. `dagger` emits the inverse.
void emit_approx_toffoli(QubitRef c1, QubitRef c2, QubitRef target, bool dagger,
                         DecompFamily tag, const Sink& sink);

/// Exact C^nZ phase polynomial over the given wires (Gray-code parity walks,
/// 2^{k}-2 CNOTs for k wires).
void emit_cnz_phase_poly(Wires wires, DecompFamily tag, const Sink& sink);

/// Exact multi-controlled Pauli for 2 or 3 controls: 6 / 14 CNOTs.
void emit_specific_pauli(GateKind pauli, Wires controls, QubitRef target,
                         DecompFamily tag, const Sink& sink);

/// Basis-change conjugation mapping an X-target circuit to a Y/Z/X-target
/// circuit: emit pre, the X circuit, then post.
struct BasisChange {
  std::vector<Instruction> pre;
  std::vector<Instruction> post;
};
BasisChange pauli_basis_change(GateKind pauli, QubitRef target);

/// Exact multi-controlled X over `controls` onto `target`, borrowing
/// `pool` wires as dirty helpers (restored). Requires pool.size() >= 1
/// when controls.size() >= 3 exceeds what a chain can host.
void emit_mcx_exact(Wires controls, QubitRef target, Wires pool,
                    DecompFamily tag, const Sink& sink);

/// Relative-phase multi-controlled X (exact permutation action, diagonal
/// junk allowed); cheaper than the exact form. Same pool contract.
void emit_mcx_relative(Wires controls, QubitRef target, Wires pool,
                       DecompFamily tag, const Sink& sink);

/// Emits MCX, middle(), MCX^dag with the redundant inner chain passes
/// cancelled. `middle` must only touch `target` diagonally plus wires
/// disjoint from controls and pool (the Lemma 7.5 sandwich).
void emit_mcx_conj_pair(Wires controls, QubitRef target, Wires pool,
                        QubitRef outer_target, DecompFamily tag,
                        const std::function<void()>& middle, const Sink& sink);

/// Network decomposition: AND-cascade of approximate Toffolis onto n-1
/// clean aux wires, apex CU(2) onto the target, mirrored uncompute.
/// Absorbs `phase` in the apex. n >= 2.
void emit_network(const Matrix2& u, double phase, Wires controls,
                  QubitRef target, Wires aux, DecompFamily tag,
                  const Sink& sink);

/// V-Chain for a multi-controlled Pauli; n >= 3 controls, n-2 aux wires.
/// The clean variant omits the mirrored half.
void emit_vchain(GateKind pauli, Wires controls, QubitRef target, Wires aux,
                 bool dirty, DecompFamily tag, const Sink& sink);

/// Single-Aux decomposition: splits into ceil(n/2)- and floor(n/2)+1-
/// controlled X blocks through one aux wire; 4 blocks when dirty, 3 when
/// clean. n >= 4... each block is a V-Chain borrowing the opposite half.
void emit_single_aux(GateKind pauli, Wires controls, QubitRef target,
                     QubitRef aux, bool dirty, DecompFamily tag,
                     const Sink& sink);

/// Multi-controlled special unitary, no aux: V^dag then the A / A^dag
/// ladder interleaved with four exact half-controlled X chains borrowing
/// the opposite control half. Throws DecompError if det(u) != 1.
void emit_su2(const Matrix2& u, Wires controls, QubitRef target,
              DecompFamily tag, const Sink& sink);

/// Hadamard rewrite: C^n(Rx(pi) Ry(pi/2)) plus C^n Rz(-pi) targeting one
/// clean aux wire.
void emit_su2_rewrite_hadamard(Wires controls, QubitRef target, QubitRef aux,
                               DecompFamily tag, const Sink& sink);

/// Phase rewrite: the whole C^n P(theta) becomes C^{n+1} Rz(-2 theta)
/// targeting one clean aux wire, controls = original controls + target.
void emit_su2_rewrite_phase(double theta, Wires controls, QubitRef target,
                            QubitRef aux, DecompFamily tag, const Sink& sink);

/// Ancilla-free fallback with a quadratic CNOT count (square-root
/// recursion). `pool` lists idle wires usable as dirty borrows; may be
/// empty. `phase` is an extra global phase on u (corrected through a
/// recursive controlled-phase when controls are present).
void emit_linear_depth(const Matrix2& u, double phase, Wires controls,
                       QubitRef target, Wires pool, DecompFamily tag,
                       const Sink& sink);

// ---------------------------------------------------------------------------
// Standalone operation wrappers returning instruction vectors (the module's
// public decomposition ops; the compiler drives the emitters directly).

std::vector<Instruction> decompose_cu2(Gate gate, double global_phase,
                                       QubitRef control, QubitRef target);
std::vector<Instruction> decompose_specific_pauli(GateKind pauli, Wires controls,
                                                  QubitRef target);
std::vector<Instruction> approx_toffoli(QubitRef c1, QubitRef c2, QubitRef target);
std::vector<Instruction> decompose_network(Gate gate, double global_phase,
                                           Wires controls, QubitRef target,
                                           Wires aux);
std::vector<Instruction> decompose_vchain(GateKind pauli, Wires controls,
                                          QubitRef target, Wires aux, bool dirty);
std::vector<Instruction> decompose_single_aux(GateKind pauli, Wires controls,
                                              QubitRef target, QubitRef aux,
                                              bool dirty);
std::vector<Instruction> decompose_su2(Gate gate, Wires controls, QubitRef target);
std::vector<Instruction> decompose_su2_rewrite(Gate gate, Wires controls,
                                               QubitRef target, QubitRef aux);
std::vector<Instruction> decompose_linear_depth(Gate gate, double global_phase,
                                                Wires controls, QubitRef target,
                                                Wires pool = {});

/// Extracts the global phase of a controlled instruction as a
/// (k-1)-controlled Phase targeting the last control. Uncontrolled
/// instructions discard the phase (returns nothing).
std::vector<Instruction> phase_correction(const std::vector<QubitRef>& controls,
                                          double phi);

}  // namespace qdecomp::decomp

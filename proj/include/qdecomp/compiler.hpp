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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qdecomp/circuit.hpp"

namespace qdecomp::compiler {

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Policy : std::uint8_t { Auto, ForceNoAux };

enum class AuxRequirement : std::uint8_t { NotApplicable, Clean, Dirty };

/// Selected decomposition family plus its auxiliary requirement.
struct DecompChoice {
  DecompFamily family = DecompFamily::CU2;
  int aux_count = 0;
  AuxRequirement aux_state = AuxRequirement::NotApplicable;

  bool operator==(const DecompChoice&) const = default;
};

/// Everything decomposition selection looks at: the QPU capacity, which
/// qubits the program holds, which are still clean, and the gate shape.
struct SelectionContext {
  int qpu_total = 16;
  std::set<QubitRef> allocated;    // main qubits handed to the program
  std::set<QubitRef> clean;        // clean main qubits (all of them)
  GateClass gate_class = GateClass::Pauli;
  int n_controls = 0;
  std::set<QubitRef> gate_qubits;  // controls + target (may include aux lines)
  // Aux lines of enclosing in-flight expansions that will occupy clean hosts
  // beyond this gate's own wires.
  int reserved_clean = 0;
};

/// First feasible entry of the class-specific candidate list (Table-ordered,
/// clean variants before dirty at equal asymptotic cost).
DecompChoice select_decomposition(const SelectionContext& ctx,
                                  Policy policy = Policy::Auto);

/// One auxiliary group: the aux lines created for a single decomposition,
/// its interaction group I (empty for clean groups), and the required state.
struct AuxGroup {
  int group_id = 0;
  std::vector<QubitRef> aux;
  std::set<QubitRef> interaction_group;  // main refs; empty iff Clean
  AuxRequirement required_state = AuxRequirement::Clean;
  std::uint64_t start_time = 0;  // output index of the group's first gate
  // Main wires of the gate the group serves; no auxiliary may be hosted on
  // them (for dirty groups this set equals I).
  std::set<QubitRef> gate_wires;
};

struct ChoiceRecord {
  std::size_t source_index = 0;  // input instruction index
  Gate gate;
  int n_controls = 0;
  DecompChoice choice;
  bool nested = false;  // produced while expanding another record's gate
};

struct HostEntry {
  QubitRef aux;
  QubitRef host;
  // Phase 1 hosts are justified by an interaction chain: host was a partner
  // of `via`, itself a partner of the auxiliary, at selection time.
  bool via_phase1 = false;
  QubitRef via;

  bool operator==(const HostEntry&) const = default;
};

struct HostRecord {
  int group_id = 0;
  AuxRequirement required_state = AuxRequirement::Clean;
  std::set<QubitRef> interaction_group;
  std::vector<HostEntry> hosts;
};

struct CompilationReport {
  std::vector<ChoiceRecord> choices;
  std::vector<HostRecord> groups;
  GateStats stats;
};

struct CompileOptions {
  Policy policy = Policy::Auto;
  bool store_instructions = true;  // false: count CNOTs only (large runs)
  InteractionOrder interaction_order = InteractionOrder::FirstContact;
};

struct CompileResult {
  std::optional<Circuit> circuit;  // present when store_instructions
  CompilationReport report;
};

/// Compiles a high-level circuit for the given QPU: walks instructions in
/// program order, selects and expands every multi-controlled gate, and
/// allocates each auxiliary group onto main qubits before the next
/// decomposition begins.
CompileResult compile(const Circuit& input, QpuSpec qpu, CompileOptions options);

inline CompileResult compile(const Circuit& input, QpuSpec qpu,
                             Policy policy = Policy::Auto) {
  CompileOptions opt;
  opt.policy = policy;
  return compile(input, qpu, opt);
}

/// Fuses the around-conjugated phase pair [X; C P(a); X; C P(b)] emitted by
/// state-preparation style leaves into one controlled Rz carrying a global
/// phase. Applied by compile() before lowering.
std::vector<Instruction> fuse_around_phases(const std::vector<Instruction>& in);

}  // namespace qdecomp::compiler

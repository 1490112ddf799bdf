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
#include <set>
#include <stdexcept>
#include <vector>

#include "qdecomp/instruction.hpp"

namespace qdecomp {

struct QpuSpec {
  int total = 16;  // physical qubit count; coupling graph is out of scope
};

struct CircuitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Which end of a qubit's interaction history "in order" refers to when
/// the allocator scans candidates.
enum class InteractionOrder : std::uint8_t { FirstContact, LastContact };

/// Per-qubit log of distinct two-qubit partners, each stamped with the time
/// (instruction counter) of the first shared instruction.
class InteractionLog {
 public:
  void record(QubitRef a, QubitRef b, std::uint64_t time);

  /// Distinct partners of q ordered by first-contact time (or latest-first
  /// when order is LastContact).
  std::vector<QubitRef> partners(
      QubitRef q, InteractionOrder order = InteractionOrder::FirstContact) const;

  /// Rewrites every trace of `from` onto `to`, keeping the earlier
  /// first-contact time when both already interacted with the same partner.
  void merge(QubitRef from, QubitRef to);

  bool empty() const { return log_.empty(); }

 private:
  std::map<QubitRef, std::map<QubitRef, std::uint64_t>> log_;
};

struct GateStats {
  std::uint64_t cnot_total = 0;
  std::map<DecompFamily, std::uint64_t> per_algorithm;
};

/// Ordered instruction list plus the bookkeeping the compiler reads:
/// per-qubit clean/dirty state and the interaction log.
class Circuit {
 public:
  explicit Circuit(QpuSpec qpu) : qpu_(qpu), main_dirty_(qpu.total, false) {}

  const QpuSpec& qpu() const { return qpu_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  const std::vector<QubitRef>& measured() const { return measured_; }
  const InteractionLog& interactions() const { return interactions_; }

  /// Appends an instruction. Operand dirty-marking is skipped for
  /// around-conjugation gates and for instructions landing on auxiliary
  /// hosts (marks_dirty = false); interactions are always recorded.
  void push(Instruction ins, bool marks_dirty = true);

  /// Terminal measurement; marks the qubits dirty.
  void measure(const std::vector<QubitRef>& qubits);

  bool has_measurement() const { return !measured_.empty(); }

  /// Copy without the terminal measurement record.
  Circuit gates_only() const;

  bool is_dirty(QubitRef q) const;
  void mark_dirty(QubitRef q);

  /// All Main refs (allocated or not) up to qpu.total whose state is Clean.
  std::set<QubitRef> clean_qubits() const;

  std::vector<QubitRef> interaction_qubits(
      QubitRef q, InteractionOrder order = InteractionOrder::FirstContact) const {
    return interactions_.partners(q, order);
  }

  /// Rewrites all endpoints of instructions in [from_index, end) from one
  /// qubit to another and merges the interaction history. Hosting never
  /// flips a clean qubit dirty.
  void rewrite_qubit(QubitRef from, QubitRef to, std::size_t from_index);

  std::size_t size() const { return instructions_.size(); }

 private:
  QpuSpec qpu_;
  std::vector<Instruction> instructions_;
  std::vector<QubitRef> measured_;
  std::vector<bool> main_dirty_;
  std::set<QubitRef> dirty_aux_;  // aux lines touched before allocation
  InteractionLog interactions_;
};

/// Counts CNOTs total and per decomposition family. Throws CircuitError
/// ("not compiled") unless the circuit contains only single-qubit gates and
/// single-controlled PauliX on main qubits.
GateStats gate_stats(const Circuit& circuit);

}  // namespace qdecomp

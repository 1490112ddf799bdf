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
#include <vector>

#include "qdecomp/circuit.hpp"

namespace qdecomp {

/// Circuit builder with the high-level control semantics: gates apply to
/// qubits under nested control scopes, with_around conjugations bypass the
/// enclosing scope, and any gate-only body can be called in reverse.
///
/// A process is single-owner and mutated from one thread; the finished
/// Circuit is immutable and safe to share.
class Process {
 public:
  explicit Process(QpuSpec qpu) : circuit_(qpu) {}

  /// Returns n fresh Main refs, all Clean. Throws CircuitError
  /// ("capacity exceeded") past qpu.total.
  std::vector<QubitRef> allocate(int n);

  void apply(Gate gate, QubitRef target, double global_phase = 0.0);

  /// Runs body with `controls` added to the active scope; every instruction
  /// issued inside carries the union of enclosing scopes outermost first.
  void with_control(const std::vector<QubitRef>& controls,
                    const std::function<void()>& body);

  /// Emits conjugation, body, then the adjoint of conjugation in reverse.
  /// Conjugation gates are exempt from the enclosing control scope (adding
  /// controls commutes with the conjugation pair) and from dirty marking.
  void with_around(const std::function<void()>& conjugation,
                   const std::function<void()>& body);

  /// Returns a procedure issuing the inverse of body's instructions in
  /// reverse order. Throws CircuitError ("non-invertible") if body measures.
  std::function<void()> adjoint(const std::function<void()>& body);

  void measure(const std::vector<QubitRef>& qubits);

  int allocated() const { return next_main_; }
  const Circuit& circuit() const { return circuit_; }
  Circuit take() { return std::move(circuit_); }

 private:
  std::vector<QubitRef> active_scope() const;
  void emit(Instruction ins);
  // Runs body with emission redirected into a buffer and the control scope
  // suspended; used by with_around and adjoint.
  std::vector<Instruction> capture(const std::function<void()>& body);

  Circuit circuit_;
  int next_main_ = 0;
  std::vector<std::vector<QubitRef>> scope_stack_;
  std::vector<std::vector<Instruction>*> capture_stack_;
};

}  // namespace qdecomp

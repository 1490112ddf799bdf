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

#include "qdecomp/process.hpp"

#include <algorithm>

namespace qdecomp {

std::vector<QubitRef> Process::allocate(int n) {
  if (n <= 0) throw CircuitError("allocate: n must be positive");
  if (next_main_ + n > circuit_.qpu().total)
    throw CircuitError("capacity exceeded: " + std::to_string(next_main_ + n) +
                       " qubits requested on a " +
                       std::to_string(circuit_.qpu().total) + "-qubit QPU");
  std::vector<QubitRef> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(QubitRef::main(next_main_++));
  return out;
}

std::vector<QubitRef> Process::active_scope() const {
  std::vector<QubitRef> scope;
  for (const auto& level : scope_stack_)
    scope.insert(scope.end(), level.begin(), level.end());
  return scope;
}

void Process::emit(Instruction ins) {
  if (!capture_stack_.empty()) {
    capture_stack_.back()->push_back(std::move(ins));
    return;
  }
  circuit_.push(std::move(ins));
}

void Process::apply(Gate gate, QubitRef target, double global_phase) {
  if (target.is_main() && target.index >= next_main_)
    throw CircuitError("apply: target not allocated");
  Instruction ins(gate, target, active_scope(), global_phase);
  if (std::find(ins.controls.begin(), ins.controls.end(), target) !=
      ins.controls.end())
    throw CircuitError("apply: target is part of the active control scope");
  emit(std::move(ins));
}

void Process::with_control(const std::vector<QubitRef>& controls,
                           const std::function<void()>& body) {
  auto enclosing = active_scope();
  for (std::size_t i = 0; i < controls.size(); ++i) {
    for (std::size_t j = i + 1; j < controls.size(); ++j)
      if (controls[i] == controls[j])
        throw CircuitError("with_control: duplicate control");
    if (std::find(enclosing.begin(), enclosing.end(), controls[i]) !=
        enclosing.end())
      throw CircuitError("with_control: control already in an enclosing scope");
    if (controls[i].is_main() && controls[i].index >= next_main_)
      throw CircuitError("with_control: control not allocated");
  }
  scope_stack_.push_back(controls);
  try {
    body();
  } catch (...) {
    scope_stack_.pop_back();
    throw;
  }
  scope_stack_.pop_back();
}

std::vector<Instruction> Process::capture(const std::function<void()>& body) {
  std::vector<Instruction> buffer;
  std::vector<std::vector<QubitRef>> saved_scope;
  saved_scope.swap(scope_stack_);
  capture_stack_.push_back(&buffer);
  try {
    body();
  } catch (...) {
    capture_stack_.pop_back();
    scope_stack_.swap(saved_scope);
    throw;
  }
  capture_stack_.pop_back();
  scope_stack_.swap(saved_scope);
  return buffer;
}

void Process::with_around(const std::function<void()>& conjugation,
                          const std::function<void()>& body) {
  // The conjugation runs outside the enclosing control scope; its own nested
  // scopes still apply.
  auto conj = capture(conjugation);
  for (auto ins : conj) {
    ins.around_conj = true;
    emit(std::move(ins));
  }
  body();
  for (auto it = conj.rbegin(); it != conj.rend(); ++it) {
    Instruction inv = it->inverse();
    inv.around_conj = true;
    emit(std::move(inv));
  }
}

std::function<void()> Process::adjoint(const std::function<void()>& body) {
  return [this, body]() {
    const std::size_t measured_before = circuit_.measured().size();
    auto captured = capture(body);
    if (circuit_.measured().size() != measured_before)
      throw CircuitError("adjoint: body is non-invertible (it measures)");
    auto scope = active_scope();
    for (auto it = captured.rbegin(); it != captured.rend(); ++it) {
      Instruction inv = it->inverse();
      // Re-emission adds the scope active at invocation time in front of the
      // body's own controls.
      std::vector<QubitRef> controls = scope;
      controls.insert(controls.end(), inv.controls.begin(), inv.controls.end());
      inv.controls = std::move(controls);
      emit(std::move(inv));
    }
  };
}

void Process::measure(const std::vector<QubitRef>& qubits) {
  if (!capture_stack_.empty())
    throw CircuitError("adjoint: body is non-invertible (it measures)");
  circuit_.measure(qubits);
}

}  // namespace qdecomp

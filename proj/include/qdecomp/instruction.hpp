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

#include <vector>

#include "qdecomp/gate.hpp"
#include "qdecomp/qubit.hpp"

namespace qdecomp {

/// Decomposition family that produced an instruction. None marks gates
/// emitted directly (user gates, passthrough single-qubit gates).
enum class DecompFamily : std::uint8_t {
  None,
  CU2,
  SpecificPauli,
  ApproxToffoli,
  Network,
  VChain,
  SingleAux,
  SU2,
  SU2Rewrite,
  LinearDepth,
};

const char* family_name(DecompFamily f);

struct Instruction {
  Gate gate;
  QubitRef target;
  std::vector<QubitRef> controls;  // outermost scope first, duplicate free
  double global_phase = 0.0;       // nonzero only for decorated gate calls
  DecompFamily tag = DecompFamily::None;
  // Set on gates emitted as the conjugation half of a with_around block.
  // Such gates are exempt from dirty marking (the closing adjoint restores
  // the state by construction).
  bool around_conj = false;

  Instruction() = default;
  Instruction(Gate g, QubitRef t, std::vector<QubitRef> c = {},
              double phase = 0.0, DecompFamily f = DecompFamily::None)
      : gate(g), target(t), controls(std::move(c)), global_phase(phase), tag(f) {}

  bool is_cx() const {
    return gate.kind == GateKind::PauliX && controls.size() == 1;
  }

  Instruction inverse() const {
    Instruction inv = *this;
    inv.gate = gate.inverse();
    inv.global_phase = -global_phase;
    return inv;
  }
};

}  // namespace qdecomp

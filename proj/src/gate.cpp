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

#include "qdecomp/gate.hpp"

#include <cmath>

#include "qdecomp/instruction.hpp"

namespace qdecomp {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Matrix2 Gate::matrix() const {
  Matrix2 m;
  const double half = angle / 2.0;
  switch (kind) {
    case GateKind::PauliX:
      m << 0, 1, 1, 0;
      return m;
    case GateKind::PauliY:
      m << 0, -kI, kI, 0;
      return m;
    case GateKind::PauliZ:
      m << 1, 0, 0, -1;
      return m;
    case GateKind::Hadamard:
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    case GateKind::RotX:
      m << std::cos(half), -kI * std::sin(half), -kI * std::sin(half), std::cos(half);
      return m;
    case GateKind::RotY:
      m << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
      return m;
    case GateKind::RotZ:
      m << std::exp(-kI * half), 0, 0, std::exp(kI * half);
      return m;
    case GateKind::Phase:
      m << 1, 0, 0, std::exp(kI * angle);
      return m;
  }
  m.setIdentity();
  return m;
}

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::PauliX: return "x";
    case GateKind::PauliY: return "y";
    case GateKind::PauliZ: return "z";
    case GateKind::RotX: return "rx";
    case GateKind::RotY: return "ry";
    case GateKind::RotZ: return "rz";
    case GateKind::Phase: return "p";
    case GateKind::Hadamard: return "h";
  }
  return "?";
}

std::string Gate::name() const { return gate_kind_name(kind); }

const char* family_name(DecompFamily f) {
  switch (f) {
    case DecompFamily::None: return "none";
    case DecompFamily::CU2: return "cu2";
    case DecompFamily::SpecificPauli: return "specific-pauli";
    case DecompFamily::ApproxToffoli: return "approx-toffoli";
    case DecompFamily::Network: return "network";
    case DecompFamily::VChain: return "v-chain";
    case DecompFamily::SingleAux: return "single-aux";
    case DecompFamily::SU2: return "su2";
    case DecompFamily::SU2Rewrite: return "su2-rewrite";
    case DecompFamily::LinearDepth: return "linear-depth";
  }
  return "?";
}

}  // namespace qdecomp

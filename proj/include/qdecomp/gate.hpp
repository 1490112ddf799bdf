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

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qdecomp {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

enum class GateKind : std::uint8_t {
  PauliX,
  PauliY,
  PauliZ,
  RotX,
  RotY,
  RotZ,
  Phase,
  Hadamard,
};

/// Which decomposition candidate table a multi-controlled gate falls into.
enum class GateClass : std::uint8_t { Pauli, Rotation, PhaseGate, HadamardGate };

/// A single-qubit gate: kind plus rotation/phase angle where applicable.
/// Pauli gates and Hadamard ignore the angle.
struct Gate {
  GateKind kind = GateKind::PauliX;
  double angle = 0.0;

  static Gate x() { return {GateKind::PauliX, 0.0}; }
  static Gate y() { return {GateKind::PauliY, 0.0}; }
  static Gate z() { return {GateKind::PauliZ, 0.0}; }
  static Gate h() { return {GateKind::Hadamard, 0.0}; }
  static Gate rx(double theta) { return {GateKind::RotX, theta}; }
  static Gate ry(double theta) { return {GateKind::RotY, theta}; }
  static Gate rz(double theta) { return {GateKind::RotZ, theta}; }
  static Gate phase(double theta) { return {GateKind::Phase, theta}; }

  bool has_angle() const {
    switch (kind) {
      case GateKind::RotX:
      case GateKind::RotY:
      case GateKind::RotZ:
      case GateKind::Phase:
        return true;
      default:
        return false;
    }
  }

  GateClass gate_class() const {
    switch (kind) {
      case GateKind::PauliX:
      case GateKind::PauliY:
      case GateKind::PauliZ:
        return GateClass::Pauli;
      case GateKind::RotX:
      case GateKind::RotY:
      case GateKind::RotZ:
        return GateClass::Rotation;
      case GateKind::Phase:
        return GateClass::PhaseGate;
      case GateKind::Hadamard:
        return GateClass::HadamardGate;
    }
    return GateClass::Pauli;  // unreachable
  }

  /// 2x2 unitary of the bare gate (global phase not included).
  Matrix2 matrix() const;

  /// Inverse gate: rotations and Phase negate the angle, the rest are
  /// self-inverse.
  Gate inverse() const {
    Gate g = *this;
    if (g.has_angle()) g.angle = -g.angle;
    return g;
  }

  std::string name() const;

  bool operator==(const Gate&) const = default;
};

const char* gate_kind_name(GateKind k);

}  // namespace qdecomp

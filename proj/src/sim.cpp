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

#include "qdecomp/sim.hpp"

#include <cmath>
#include <map>

namespace qdecomp::sim {

namespace {

constexpr Complex kI{0.0, 1.0};

// Applies gate (with optional attached phase) to a contiguous amplitude
// span on wire `wire`, restricted to basis states where all control bits
// are 1.
void apply_gate_masked(const Matrix2& u, double global_phase, int wire,
                       std::uint64_t control_mask, Complex* data, int n_qubits) {
  const std::uint64_t dim = 1ull << n_qubits;
  const std::uint64_t bit = 1ull << (n_qubits - 1 - wire);
  Matrix2 g = u;
  if (global_phase != 0.0) g *= std::exp(kI * global_phase);
  const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    if ((i & control_mask) != control_mask) continue;
    const std::uint64_t j = i | bit;
    const Complex a = data[i];
    const Complex b = data[j];
    data[i] = g00 * a + g01 * b;
    data[j] = g10 * a + g11 * b;
  }
}

struct ResolvedGate {
  Matrix2 matrix;
  double phase;
  int wire;
  std::uint64_t control_mask;
};

ResolvedGate resolve(const Instruction& ins,
                     const std::function<int(QubitRef)>& wire_of, int n_qubits) {
  ResolvedGate r{ins.gate.matrix(), ins.global_phase, 0, 0};
  for (const auto& c : ins.controls) {
    const int w = wire_of(c);
    if (w < 0 || w >= n_qubits) throw SimError("control wire out of range");
    r.control_mask |= 1ull << (n_qubits - 1 - w);
  }
  r.wire = wire_of(ins.target);
  if (r.wire < 0 || r.wire >= n_qubits) throw SimError("target wire out of range");
  if (r.control_mask & (1ull << (n_qubits - 1 - r.wire)))
    throw SimError("target overlaps a control");
  return r;
}

}  // namespace

void apply_instruction(const Instruction& ins, Vector& state,
                       const std::function<int(QubitRef)>& wire_of, int n_qubits) {
  const ResolvedGate r = resolve(ins, wire_of, n_qubits);
  apply_gate_masked(r.matrix, r.phase, r.wire, r.control_mask, state.data(),
                    n_qubits);
}

namespace {

std::vector<QubitRef> default_order(const Circuit& circuit) {
  std::vector<QubitRef> order;
  for (int i = 0; i < circuit.qpu().total; ++i) order.push_back(QubitRef::main(i));
  return order;
}

Matrix run_unitary(const std::vector<Instruction>& instructions,
                   const std::vector<QubitRef>& order) {
  const int n = static_cast<int>(order.size());
  if (n > kMaxQubits) throw SimError("too large: more than 13 qubits");
  std::map<QubitRef, int> wires;
  for (int i = 0; i < n; ++i) wires[order[i]] = i;
  auto wire_of = [&wires](QubitRef q) {
    auto it = wires.find(q);
    return it == wires.end() ? -1 : it->second;
  };
  const std::uint64_t dim = 1ull << n;
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& ins : instructions) {
    // Column-wise statevector updates; cheaper than explicit Kronecker
    // products on every gate. Columns are contiguous (column-major).
    const ResolvedGate r = resolve(ins, wire_of, n);
    for (std::uint64_t col = 0; col < dim; ++col)
      apply_gate_masked(r.matrix, r.phase, r.wire, r.control_mask,
                        u.data() + col * dim, n);
  }
  return u;
}

}  // namespace

Matrix circuit_unitary(const Circuit& circuit, std::vector<QubitRef> qubit_order) {
  if (circuit.has_measurement())
    throw SimError("circuit contains measurement");
  if (qubit_order.empty()) qubit_order = default_order(circuit);
  return run_unitary(circuit.instructions(), qubit_order);
}

Vector statevector(const Circuit& circuit, std::vector<QubitRef> qubit_order) {
  if (qubit_order.empty()) qubit_order = default_order(circuit);
  const int n = static_cast<int>(qubit_order.size());
  if (n > kMaxQubits) throw SimError("too large: more than 13 qubits");
  std::map<QubitRef, int> wires;
  for (int i = 0; i < n; ++i) wires[qubit_order[i]] = i;
  auto wire_of = [&wires](QubitRef q) {
    auto it = wires.find(q);
    return it == wires.end() ? -1 : it->second;
  };
  Vector state = Vector::Zero(1ull << n);
  state(0) = 1.0;
  for (const auto& ins : circuit.instructions())
    apply_instruction(ins, state, wire_of, n);
  return state;
}

Matrix instructions_unitary(const std::vector<Instruction>& instructions,
                            int n_qubits) {
  std::vector<QubitRef> order;
  for (int i = 0; i < n_qubits; ++i) order.push_back(QubitRef::main(i));
  return run_unitary(instructions, order);
}

EquivalenceReport equal_up_to_global_phase(const Matrix& u, const Matrix& v,
                                           double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw SimError("dimension mismatch");
  // Align the phases at U's largest-magnitude entry.
  Eigen::Index r = 0, c = 0;
  double best = -1.0;
  for (Eigen::Index j = 0; j < u.cols(); ++j)
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double m = std::abs(u(i, j));
      if (m > best) {
        best = m;
        r = i;
        c = j;
      }
    }
  EquivalenceReport report;
  if (best <= 0.0 || std::abs(v(r, c)) == 0.0) {
    report.phase = 0.0;
    report.max_abs_deviation = (u - v).cwiseAbs().maxCoeff();
    report.equal = report.max_abs_deviation <= tol;
    return report;
  }
  const Complex ratio = v(r, c) / u(r, c);
  report.phase = std::arg(ratio);
  const Complex align = std::exp(-kI * report.phase);
  report.max_abs_deviation = (u - v * align).cwiseAbs().maxCoeff();
  report.equal = report.max_abs_deviation <= tol;
  return report;
}

Matrix controlled_gate_matrix(const Matrix2& u, int n_controls,
                              double global_phase) {
  const int n = n_controls + 1;
  const std::uint64_t dim = 1ull << n;
  Matrix out = Matrix::Identity(dim, dim);
  Matrix2 g = u;
  if (global_phase != 0.0) g *= std::exp(kI * global_phase);
  // Target is the least significant bit; controls occupy all higher bits.
  const std::uint64_t base = dim - 2;  // |1...1,0>
  out(base, base) = g(0, 0);
  out(base, base + 1) = g(0, 1);
  out(base + 1, base) = g(1, 0);
  out(base + 1, base + 1) = g(1, 1);
  return out;
}

EquivalenceReport verify_decomposition(const Matrix2& ideal_gate,
                                       double ideal_phase, int n_controls,
                                       const std::vector<Instruction>& emitted,
                                       AuxSpec aux, double tol) {
  const int n_main = n_controls + 1;
  const int n = n_main + aux.count;
  if (n > kMaxQubits) throw SimError("too large: more than 13 qubits");
  const Matrix full = instructions_unitary(emitted, n);
  const Matrix ideal = controlled_gate_matrix(ideal_gate, n_controls, ideal_phase);
  const std::uint64_t main_dim = 1ull << n_main;
  const std::uint64_t aux_dim = 1ull << aux.count;

  EquivalenceReport report;
  if (aux.state == AuxState::Dirty || aux.count == 0) {
    // Full factorization: U = exp(i phi) * ideal (x) I_aux, checked entrywise
    // without materializing the Kronecker product.
    Complex ratio{0.0, 0.0};
    double best = -1.0;
    for (std::uint64_t mi = 0; mi < main_dim; ++mi)
      for (std::uint64_t mj = 0; mj < main_dim; ++mj) {
        const double m = std::abs(ideal(mi, mj));
        if (m > best) {
          const Complex actual = full(mi * aux_dim, mj * aux_dim);
          if (std::abs(actual) > 0.0) {
            best = m;
            ratio = actual / ideal(mi, mj);
          }
        }
      }
    if (best < 0.0) {
      report.equal = false;
      report.max_abs_deviation = 1.0;
      return report;
    }
    report.phase = std::arg(ratio);
    const Complex align = std::exp(-kI * report.phase);
    double dev = 0.0;
    for (std::uint64_t i = 0; i < main_dim * aux_dim; ++i) {
      const std::uint64_t mi = i / aux_dim, ai = i % aux_dim;
      for (std::uint64_t j = 0; j < main_dim * aux_dim; ++j) {
        const std::uint64_t mj = j / aux_dim, aj = j % aux_dim;
        const Complex expected = (ai == aj) ? ideal(mi, mj) : Complex{0.0, 0.0};
        dev = std::max(dev, std::abs(full(i, j) * align - expected));
      }
    }
    report.max_abs_deviation = dev;
    report.equal = dev <= tol;
    return report;
  }

  // Clean aux: only columns with aux = |0..0> are constrained. They must
  // carry the ideal action on the main block and restore aux to |0..0>,
  // all under one common phase.
  Complex ratio{0.0, 0.0};
  double best = -1.0;
  for (std::uint64_t mi = 0; mi < main_dim; ++mi)
    for (std::uint64_t mj = 0; mj < main_dim; ++mj) {
      const double m = std::abs(ideal(mi, mj));
      if (m > best) {
        const Complex actual = full(mi * aux_dim, mj * aux_dim);
        if (std::abs(actual) > 0.0) {
          best = m;
          ratio = actual / ideal(mi, mj);
        }
      }
    }
  if (best < 0.0) {
    report.equal = false;
    report.max_abs_deviation = 1.0;
    return report;
  }
  report.phase = std::arg(ratio);
  const Complex align = std::exp(-kI * report.phase);
  double dev = 0.0;
  for (std::uint64_t mj = 0; mj < main_dim; ++mj) {
    const std::uint64_t col = mj * aux_dim;
    for (std::uint64_t i = 0; i < main_dim * aux_dim; ++i) {
      const std::uint64_t mi = i / aux_dim, ai = i % aux_dim;
      const Complex expected = (ai == 0) ? ideal(mi, mj) : Complex{0.0, 0.0};
      dev = std::max(dev, std::abs(full(i, col) * align - expected));
    }
  }
  report.max_abs_deviation = dev;
  report.equal = dev <= tol;
  return report;
}

EquivalenceReport verify_decomposition_clean_fast(
    const Matrix2& ideal_gate, double ideal_phase, int n_controls,
    const std::vector<Instruction>& emitted, int aux_count, double tol) {
  const int n_main = n_controls + 1;
  const int n = n_main + aux_count;
  if (n > kMaxQubits) throw SimError("too large: more than 13 qubits");
  const Matrix ideal = controlled_gate_matrix(ideal_gate, n_controls, ideal_phase);
  const std::uint64_t main_dim = 1ull << n_main;
  const std::uint64_t aux_dim = 1ull << aux_count;
  const std::uint64_t dim = 1ull << n;

  std::map<QubitRef, int> wires;
  for (int i = 0; i < n; ++i) wires[QubitRef::main(i)] = i;
  auto wire_of = [&wires](QubitRef q) {
    auto it = wires.find(q);
    return it == wires.end() ? -1 : it->second;
  };

  // Only the aux = |0..0> columns are constrained; run them as statevectors
  // instead of building the full 2^n unitary.
  Matrix columns(dim, main_dim);
  for (std::uint64_t mj = 0; mj < main_dim; ++mj) {
    Vector state = Vector::Zero(dim);
    state(mj * aux_dim) = 1.0;
    for (const auto& ins : emitted) apply_instruction(ins, state, wire_of, n);
    columns.col(mj) = state;
  }
  EquivalenceReport report;
  Complex ratio{0.0, 0.0};
  double best = -1.0;
  for (std::uint64_t mi = 0; mi < main_dim; ++mi)
    for (std::uint64_t mj = 0; mj < main_dim; ++mj) {
      const double m = std::abs(ideal(mi, mj));
      if (m > best && std::abs(columns(mi * aux_dim, mj)) > 0.0) {
        best = m;
        ratio = columns(mi * aux_dim, mj) / ideal(mi, mj);
      }
    }
  if (best < 0.0) {
    report.max_abs_deviation = 1.0;
    return report;
  }
  report.phase = std::arg(ratio);
  const Complex align = std::exp(-kI * report.phase);
  double dev = 0.0;
  for (std::uint64_t mj = 0; mj < main_dim; ++mj)
    for (std::uint64_t i = 0; i < dim; ++i) {
      const std::uint64_t mi = i / aux_dim, ai = i % aux_dim;
      const Complex expected = (ai == 0) ? ideal(mi, mj) : Complex{0.0, 0.0};
      dev = std::max(dev, std::abs(columns(i, mj) * align - expected));
    }
  report.max_abs_deviation = dev;
  report.equal = dev <= tol;
  return report;
}

}  // namespace qdecomp::sim

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

#include <doctest.h>

#include <random>

#include "qdecomp/decomp.hpp"
#include "qdecomp/sim.hpp"
#include "test_support.hpp"

using namespace qdecomp;
using test::kPi;
using decomp::Wires;

namespace {

// Wire layout everywhere: controls 0..n-1, target n, aux n+1...
sim::EquivalenceReport check(const Matrix2& ideal, double phase, int n_controls,
                             const std::vector<Instruction>& seq, int aux_count,
                             sim::AuxState state) {
  return sim::verify_decomposition(ideal, phase, n_controls, seq,
                                   sim::AuxSpec{aux_count, state});
}

}  // namespace

TEST_CASE("zyz factors reconstruct the unitary") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const Matrix2 u = test::haar_u2(rng);
    const auto f = decomp::zyz_decompose(u);
    CHECK((decomp::zyz_reconstruct(f) - u).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Degenerate branches fix delta = 0.
  for (const Matrix2& u :
       {Gate::rz(0.9).matrix(), Gate::phase(1.3).matrix(),
        Gate::x().matrix(), Gate::y().matrix()}) {
    const auto f = decomp::zyz_decompose(u);
    CHECK(f.delta == 0.0);
    CHECK((decomp::zyz_reconstruct(f) - u).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("cu2 of X equals CNOT") {
  const auto seq = decomp::decompose_cu2(Gate::x(), 0.0, QubitRef::main(0),
                                         QubitRef::main(1));
  const auto report = check(Gate::x().matrix(), 0.0, 1, seq, 0,
                            sim::AuxState::Clean);
  CHECK(report.equal);
  CHECK(std::abs(report.phase) < 1e-9);  // exact, not just up to phase
}

TEST_CASE("cu2 of decorated Rx(pi/2) equals controlled sqrt(X)") {
  const auto seq = decomp::decompose_cu2(Gate::rx(kPi / 2), kPi / 4,
                                         QubitRef::main(0), QubitRef::main(1));
  const auto u = sim::instructions_unitary(seq, 2);
  sim::Matrix expected = sim::Matrix::Identity(4, 4);
  expected(2, 2) = Complex(0.5, 0.5);
  expected(2, 3) = Complex(0.5, -0.5);
  expected(3, 2) = Complex(0.5, -0.5);
  expected(3, 3) = Complex(0.5, 0.5);
  CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cu2 handles 100 Haar-random gates with exactly 2 CNOTs") {
  std::mt19937_64 rng(102);
  for (int i = 0; i < 100; ++i) {
    const Matrix2 u = test::haar_u2(rng);
    std::vector<Instruction> seq;
    decomp::emit_cu2(u, 0.0, QubitRef::main(0), QubitRef::main(1),
                     DecompFamily::CU2, decomp::collect(seq));
    CHECK(test::count_cnots(seq) == 2);
    CHECK(check(u, 0.0, 1, seq, 0, sim::AuxState::Clean).equal);
  }
}

TEST_CASE("specific pauli: C2X costs 6 CNOTs, C3X costs 14") {
  const auto c2 = test::mains(0, 2);
  const auto seq2 =
      decomp::decompose_specific_pauli(GateKind::PauliX, c2, QubitRef::main(2));
  CHECK(test::count_cnots(seq2) == 6);
  CHECK(check(Gate::x().matrix(), 0.0, 2, seq2, 0, sim::AuxState::Clean).equal);

  const auto c3 = test::mains(0, 3);
  const auto seq3 =
      decomp::decompose_specific_pauli(GateKind::PauliX, c3, QubitRef::main(3));
  CHECK(test::count_cnots(seq3) == 14);
  CHECK(check(Gate::x().matrix(), 0.0, 3, seq3, 0, sim::AuxState::Clean).equal);

  const auto z3 =
      decomp::decompose_specific_pauli(GateKind::PauliZ, c3, QubitRef::main(3));
  CHECK(test::count_cnots(z3) == 14);
  CHECK(check(Gate::z().matrix(), 0.0, 3, z3, 0, sim::AuxState::Clean).equal);

  const auto y2 =
      decomp::decompose_specific_pauli(GateKind::PauliY, c2, QubitRef::main(2));
  CHECK(check(Gate::y().matrix(), 0.0, 2, y2, 0, sim::AuxState::Clean).equal);
}

TEST_CASE("approximate toffoli: 3 CNOTs, exact on the computational action") {
  const auto seq =
      decomp::approx_toffoli(QubitRef::main(0), QubitRef::main(1), QubitRef::main(2));
  CHECK(test::count_cnots(seq) == 3);
  const auto u = sim::instructions_unitary(seq, 3);
  const auto ideal = sim::controlled_gate_matrix(Gate::x().matrix(), 2);
  // Same permutation structure with unit-modulus entries (relative phases).
  for (int col = 0; col < 8; ++col)
    for (int row = 0; row < 8; ++row) {
      const double expect = std::abs(ideal(row, col));
      CHECK(std::abs(std::abs(u(row, col)) - expect) < 1e-12);
    }
  // |110> maps to |111> with unit amplitude.
  CHECK(std::abs(u(7, 6)) == doctest::Approx(1.0));
  // And the relative phase lives outside the both-controls-on subspace.
  CHECK(std::abs(u(7, 6) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(u(6, 7) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("pauli basis changes") {
  const auto t = QubitRef::main(0);
  auto z = decomp::pauli_basis_change(GateKind::PauliZ, t);
  std::vector<Instruction> zc = z.pre;
  zc.push_back(Instruction(Gate::x(), t));
  zc.insert(zc.end(), z.post.begin(), z.post.end());
  CHECK((sim::instructions_unitary(zc, 1) - Gate::z().matrix()).cwiseAbs().maxCoeff() <
        1e-12);

  auto y = decomp::pauli_basis_change(GateKind::PauliY, t);
  std::vector<Instruction> yc = y.pre;
  yc.push_back(Instruction(Gate::x(), t));
  yc.insert(yc.end(), y.post.begin(), y.post.end());
  CHECK((sim::instructions_unitary(yc, 1) - Gate::y().matrix()).cwiseAbs().maxCoeff() <
        1e-12);

  auto x = decomp::pauli_basis_change(GateKind::PauliX, t);
  CHECK(x.pre.empty());
  CHECK(x.post.empty());
}

TEST_CASE("network decomposition restores clean aux and matches the gate") {
  std::mt19937_64 rng(103);
  // C4 U with 3 aux (the figure's shape).
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix2 u = test::haar_u2(rng);
    const auto controls = test::mains(0, 4);
    const auto aux = test::mains(5, 3);
    const auto seq =
        decomp::decompose_network(Gate::ry(0.0), 0.0, controls,
                                  QubitRef::main(4), aux);
    (void)seq;
    std::vector<Instruction> out;
    decomp::emit_network(u, 0.0, controls, QubitRef::main(4), aux,
                         DecompFamily::Network, decomp::collect(out));
    CHECK(check(u, 0.0, 4, out, 3, sim::AuxState::Clean).equal);
  }
  // Smallest cascade: one Toffoli stage plus the apex CU(2).
  const auto controls2 = test::mains(0, 2);
  std::vector<Instruction> out2;
  decomp::emit_network(Gate::ry(1.1).matrix(), 0.0, controls2, QubitRef::main(2),
                       test::mains(3, 1), DecompFamily::Network,
                       decomp::collect(out2));
  CHECK(test::count_cnots(out2) == 8);
  CHECK(check(Gate::ry(1.1).matrix(), 0.0, 2, out2, 1, sim::AuxState::Clean).equal);
  // Random rotation with 5 controls over 9 wires total.
  std::vector<Instruction> out5;
  const auto controls5 = test::mains(0, 5);
  decomp::emit_network(Gate::ry(0.77).matrix(), 0.0, controls5, QubitRef::main(5),
                       test::mains(6, 4), DecompFamily::Network,
                       decomp::collect(out5));
  CHECK(check(Gate::ry(0.77).matrix(), 0.0, 5, out5, 4, sim::AuxState::Clean).equal);
  // The apex absorbs a decorated global phase.
  std::vector<Instruction> outp;
  decomp::emit_network(Gate::rx(0.9).matrix(), 0.6, controls2, QubitRef::main(2),
                       test::mains(3, 1), DecompFamily::Network,
                       decomp::collect(outp));
  CHECK(check(Gate::rx(0.9).matrix(), 0.6, 2, outp, 1, sim::AuxState::Clean).equal);
}

TEST_CASE("v-chain: dirty variant is transparent on any aux state") {
  for (int n = 3; n <= 5; ++n) {
    const auto controls = test::mains(0, n);
    const auto aux = test::mains(n + 1, n - 2);
    const auto seq = decomp::decompose_vchain(GateKind::PauliX, controls,
                                              QubitRef::main(n), aux, true);
    const auto report =
        check(Gate::x().matrix(), 0.0, n, seq, n - 2, sim::AuxState::Dirty);
    INFO("n = ", n, " deviation = ", report.max_abs_deviation);
    CHECK(report.equal);
  }
}

TEST_CASE("v-chain: clean variant is cheaper and exact on |0> aux") {
  for (int n = 3; n <= 5; ++n) {
    const auto controls = test::mains(0, n);
    const auto aux = test::mains(n + 1, n - 2);
    const auto clean = decomp::decompose_vchain(GateKind::PauliX, controls,
                                                QubitRef::main(n), aux, false);
    const auto dirty = decomp::decompose_vchain(GateKind::PauliX, controls,
                                                QubitRef::main(n), aux, true);
    CHECK(test::count_cnots(clean) < test::count_cnots(dirty));
    CHECK(check(Gate::x().matrix(), 0.0, n, clean, n - 2, sim::AuxState::Clean)
              .equal);
  }
  // C4X with 2 dirty aux: full-space identity action on the aux block.
  const auto controls = test::mains(0, 4);
  const auto seq = decomp::decompose_vchain(
      GateKind::PauliX, controls, QubitRef::main(4), test::mains(5, 2), true);
  CHECK(check(Gate::x().matrix(), 0.0, 4, seq, 2, sim::AuxState::Dirty).equal);
  // Y and Z targets via basis change.
  const auto zy = decomp::decompose_vchain(GateKind::PauliZ, controls,
                                           QubitRef::main(4), test::mains(5, 2),
                                           true);
  CHECK(check(Gate::z().matrix(), 0.0, 4, zy, 2, sim::AuxState::Dirty).equal);
  const auto yy = decomp::decompose_vchain(GateKind::PauliY, controls,
                                           QubitRef::main(4), test::mains(5, 2),
                                           false);
  CHECK(check(Gate::y().matrix(), 0.0, 4, yy, 2, sim::AuxState::Clean).equal);
}

TEST_CASE("single-aux splits into half-sized blocks") {
  // C7X with one clean aux over 9 wires (three blocks), and dirty (four).
  const auto controls = test::mains(0, 7);
  const auto t = QubitRef::main(7);
  const auto aux = QubitRef::main(8);
  const auto clean =
      decomp::decompose_single_aux(GateKind::PauliX, controls, t, aux, false);
  CHECK(check(Gate::x().matrix(), 0.0, 7, clean, 1, sim::AuxState::Clean).equal);
  const auto dirty =
      decomp::decompose_single_aux(GateKind::PauliX, controls, t, aux, true);
  CHECK(check(Gate::x().matrix(), 0.0, 7, dirty, 1, sim::AuxState::Dirty).equal);
  CHECK(test::count_cnots(clean) < test::count_cnots(dirty));

  // Smaller instances, all pauli kinds.
  for (int n = 4; n <= 6; ++n) {
    const auto cs = test::mains(0, n);
    const auto tt = QubitRef::main(n);
    const auto aa = QubitRef::main(n + 1);
    for (bool d : {false, true}) {
      const auto seq =
          decomp::decompose_single_aux(GateKind::PauliZ, cs, tt, aa, d);
      CHECK(check(Gate::z().matrix(), 0.0, n, seq, 1,
                  d ? sim::AuxState::Dirty : sim::AuxState::Clean)
                .equal);
    }
  }
}

TEST_CASE("su2 factors: V D Vdag and the A-ladder reconstruct the gate") {
  std::mt19937_64 rng(104);
  for (int i = 0; i < 100; ++i) {
    const Matrix2 u = test::haar_su2(rng);
    const auto f = decomp::su2_factorize(u);
    CHECK((f.v * f.d * f.v.adjoint() - u).cwiseAbs().maxCoeff() < 1e-12);
    const Matrix2 a = Gate::rz(f.a_angle).matrix();
    const Matrix2 x = Gate::x().matrix();
    const Matrix2 axax = a.adjoint() * x * a * x;
    CHECK((axax * axax - f.d).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS((void)decomp::su2_factorize(Gate::h().matrix()),
                  decomp::DecompError);
}

TEST_CASE("su2 decomposition: no aux, oracle-equal") {
  std::mt19937_64 rng(105);
  // C5 Ry over 6 qubits.
  const auto controls = test::mains(0, 5);
  const auto seq = decomp::decompose_su2(Gate::ry(0.83), controls, QubitRef::main(5));
  CHECK(check(Gate::ry(0.83).matrix(), 0.0, 5, seq, 0, sim::AuxState::Clean).equal);
  // Random SU(2) draws for n = 2..6.
  for (int n = 2; n <= 6; ++n) {
    const Matrix2 u = test::haar_su2(rng);
    std::vector<Instruction> out;
    decomp::emit_su2(u, test::mains(0, n), QubitRef::main(n), DecompFamily::SU2,
                     decomp::collect(out));
    const auto report = check(u, 0.0, n, out, 0, sim::AuxState::Clean);
    INFO("n = ", n, " dev = ", report.max_abs_deviation);
    CHECK(report.equal);
  }
  // n = 1 reduces to the CU(2) path.
  const auto one = decomp::decompose_su2(Gate::ry(0.4), test::mains(0, 1),
                                         QubitRef::main(1));
  CHECK(test::count_cnots(one) == 2);
  CHECK(check(Gate::ry(0.4).matrix(), 0.0, 1, one, 0, sim::AuxState::Clean).equal);
}

TEST_CASE("su2 rewrite: C3H with one clean aux") {
  const auto controls = test::mains(0, 3);
  const auto seq = decomp::decompose_su2_rewrite(Gate::h(), controls,
                                                 QubitRef::main(3), QubitRef::main(4));
  CHECK(check(Gate::h().matrix(), 0.0, 3, seq, 1, sim::AuxState::Clean).equal);
}

TEST_CASE("su2 rewrite: C3P(theta) places the phase on |1111> only") {
  const double theta = 0.9;
  const auto controls = test::mains(0, 3);
  const auto seq = decomp::decompose_su2_rewrite(Gate::phase(theta), controls,
                                                 QubitRef::main(3), QubitRef::main(4));
  const auto report =
      check(Gate::phase(theta).matrix(), 0.0, 3, seq, 1, sim::AuxState::Clean);
  CHECK(report.equal);
  // Rz(-2 theta) on |0> contributes exp(i theta).
  const Matrix2 rz = Gate::rz(-2 * theta).matrix();
  CHECK(std::abs(rz(0, 0) - std::exp(Complex(0, theta))) < 1e-12);
}

TEST_CASE("linear depth: ancilla-free quadratic fallback") {
  // C5 P over 6 qubits, no pool at all.
  const auto controls = test::mains(0, 5);
  const auto seq = decomp::decompose_linear_depth(Gate::phase(1.3), 0.0, controls,
                                                  QubitRef::main(5));
  CHECK(check(Gate::phase(1.3).matrix(), 0.0, 5, seq, 0, sim::AuxState::Clean)
            .equal);
  // Also exact as a full dirty-factorization statement (no aux at all).
  CHECK(check(Gate::phase(1.3).matrix(), 0.0, 5, seq, 0, sim::AuxState::Dirty)
            .equal);

  // Hadamard and Pauli targets.
  for (int n = 2; n <= 5; ++n) {
    const auto cs = test::mains(0, n);
    const auto h = decomp::decompose_linear_depth(Gate::h(), 0.0, cs,
                                                  QubitRef::main(n));
    CHECK(check(Gate::h().matrix(), 0.0, n, h, 0, sim::AuxState::Clean).equal);
    const auto x = decomp::decompose_linear_depth(Gate::x(), 0.0, cs,
                                                  QubitRef::main(n));
    CHECK(check(Gate::x().matrix(), 0.0, n, x, 0, sim::AuxState::Clean).equal);
    const auto z = decomp::decompose_linear_depth(Gate::z(), 0.0, cs,
                                                  QubitRef::main(n));
    CHECK(check(Gate::z().matrix(), 0.0, n, z, 0, sim::AuxState::Clean).equal);
  }

  // n = 1 delegates to CU(2): 2 CNOTs.
  const auto one = decomp::decompose_linear_depth(Gate::phase(0.7), 0.0,
                                                  test::mains(0, 1), QubitRef::main(1));
  CHECK(test::count_cnots(one) == 2);

  // Quadratic growth: the doubling ratio approaches 4 from above and the
  // count stays under a fixed quadratic bound.
  const int n4 = test::count_cnots(decomp::decompose_linear_depth(
      Gate::phase(0.5), 0.0, test::mains(0, 4), QubitRef::main(4)));
  const int n8 = test::count_cnots(decomp::decompose_linear_depth(
      Gate::phase(0.5), 0.0, test::mains(0, 8), QubitRef::main(8)));
  const int n16 = test::count_cnots(decomp::decompose_linear_depth(
      Gate::phase(0.5), 0.0, test::mains(0, 16), QubitRef::main(16)));
  const double r84 = static_cast<double>(n8) / n4;
  const double r168 = static_cast<double>(n16) / n8;
  INFO("counts: ", n4, " ", n8, " ", n16);
  CHECK(r84 > 3.0);
  CHECK(r168 > 3.0);
  CHECK(r168 < r84);   // settling toward the quadratic doubling factor
  CHECK(r168 < 6.0);
  CHECK(n16 <= 30 * 16 * 16);  // c * n^2 with a fixed constant

  // A pool of idle wires is exploited but the result stays exact.
  const auto pooled = decomp::decompose_linear_depth(
      Gate::phase(1.3), 0.0, test::mains(0, 5), QubitRef::main(5), test::mains(6, 3));
  CHECK(test::count_cnots(pooled) <= test::count_cnots(seq));
  // Verify including identity action on the pool wires.
  CHECK(check(Gate::phase(1.3).matrix(), 0.0, 5, pooled, 3, sim::AuxState::Dirty)
            .equal);
}

TEST_CASE("linear depth with a decorated phase recurses a correction") {
  const auto controls = test::mains(0, 3);
  const auto seq = decomp::decompose_linear_depth(Gate::rx(kPi / 2), kPi / 4,
                                                  controls, QubitRef::main(3));
  CHECK(check(Gate::rx(kPi / 2).matrix(), kPi / 4, 3, seq, 0,
              sim::AuxState::Clean)
            .equal);
}

TEST_CASE("phase correction op") {
  const auto controls = test::mains(0, 2);
  const auto corr = decomp::phase_correction(controls, kPi / 4);
  REQUIRE(corr.size() == 1);
  CHECK(corr[0].gate.kind == GateKind::Phase);
  CHECK(corr[0].gate.angle == kPi / 4);
  CHECK(corr[0].target == QubitRef::main(1));
  CHECK(corr[0].controls == std::vector<QubitRef>{QubitRef::main(0)});
  CHECK(decomp::phase_correction(controls, 0.0).empty());
  const auto single = decomp::phase_correction({QubitRef::main(0)}, 0.5);
  REQUIRE(single.size() == 1);
  CHECK(single[0].controls.empty());
}

TEST_CASE("emitted sequences stay in the compiled gate set") {
  // Single-qubit gates plus single-controlled PauliX only.
  std::mt19937_64 rng(106);
  auto check_closure = [](const std::vector<Instruction>& seq) {
    for (const auto& ins : seq) {
      CHECK(ins.controls.size() <= 1);
      if (ins.controls.size() == 1) CHECK(ins.gate.kind == GateKind::PauliX);
    }
  };
  check_closure(decomp::decompose_su2(Gate::ry(0.3), test::mains(0, 5),
                                      QubitRef::main(5)));
  check_closure(decomp::decompose_vchain(GateKind::PauliX, test::mains(0, 5),
                                         QubitRef::main(5), test::mains(6, 3),
                                         true));
  check_closure(decomp::decompose_single_aux(GateKind::PauliY, test::mains(0, 6),
                                             QubitRef::main(6), QubitRef::main(7),
                                             true));
  check_closure(decomp::decompose_linear_depth(Gate::h(), 0.0, test::mains(0, 5),
                                               QubitRef::main(5)));
  check_closure(decomp::decompose_network(Gate::phase(0.4), 0.0, test::mains(0, 3),
                                          QubitRef::main(3), test::mains(4, 2)));
  (void)rng;
}

TEST_CASE("count ordering at fixed n: vchain < single-aux < linear depth") {
  const int n = 8;
  const auto cs = test::mains(0, n);
  const auto t = QubitRef::main(n);
  const int vc_clean = test::count_cnots(decomp::decompose_vchain(
      GateKind::PauliX, cs, t, test::mains(n + 1, n - 2), false));
  const int vc_dirty = test::count_cnots(decomp::decompose_vchain(
      GateKind::PauliX, cs, t, test::mains(n + 1, n - 2), true));
  const int sa_clean = test::count_cnots(decomp::decompose_single_aux(
      GateKind::PauliX, cs, t, QubitRef::main(n + 1), false));
  const int sa_dirty = test::count_cnots(decomp::decompose_single_aux(
      GateKind::PauliX, cs, t, QubitRef::main(n + 1), true));
  const int ld = test::count_cnots(
      decomp::decompose_linear_depth(Gate::x(), 0.0, cs, t));
  CHECK(vc_clean < vc_dirty);
  CHECK(vc_dirty < sa_clean);
  CHECK(sa_clean < sa_dirty);
  CHECK(sa_dirty < ld);
}

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

#include "qdecomp/decomp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qdecomp::decomp {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
constexpr double kPhaseTol = 1e-12;

double wrap_angle(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

bool near_zero_phase(double a) { return std::abs(wrap_angle(a)) <= kPhaseTol; }

void put(const Sink& sink, Gate g, QubitRef t, std::vector<QubitRef> controls,
         DecompFamily tag, double phase = 0.0) {
  sink(Instruction(g, t, std::move(controls), phase, tag));
}

void put_cx(const Sink& sink, QubitRef c, QubitRef t, DecompFamily tag) {
  put(sink, Gate::x(), t, {c}, tag);
}

std::vector<QubitRef> to_vec(Wires w) { return {w.begin(), w.end()}; }

}  // namespace

Sink collect(std::vector<Instruction>& out) {
  return [&out](Instruction&& ins) { out.push_back(std::move(ins)); };
}

// ---------------------------------------------------------------------------
// Single-qubit factorizations

ZYZFactors zyz_decompose(const Matrix2& u) {
  ZYZFactors f;
  const Complex det = u.determinant();
  f.alpha = std::arg(det) / 2.0;
  const Matrix2 su = u * std::exp(-kI * f.alpha);
  const double m00 = std::abs(su(0, 0));
  const double m10 = std::abs(su(1, 0));
  f.gamma = 2.0 * std::atan2(m10, m00);
  constexpr double kDegenerate = 1e-15;
  if (m10 < kDegenerate) {
    // gamma ~ 0: only beta + delta is determined; fix delta = 0.
    f.delta = 0.0;
    f.beta = -2.0 * std::arg(su(0, 0));
  } else if (m00 < kDegenerate) {
    // gamma ~ pi: only beta - delta is determined; fix delta = 0.
    f.delta = 0.0;
    f.beta = 2.0 * std::arg(su(1, 0));
  } else {
    const double a00 = std::arg(su(0, 0));
    const double a10 = std::arg(su(1, 0));
    f.beta = a10 - a00;
    f.delta = -a10 - a00;
  }
  return f;
}

Matrix2 zyz_reconstruct(const ZYZFactors& f) {
  Matrix2 m = Gate::rz(f.beta).matrix() * Gate::ry(f.gamma).matrix() *
              Gate::rz(f.delta).matrix();
  return m * std::exp(kI * f.alpha);
}

SU2Factors su2_factorize(const Matrix2& u) {
  if (std::abs(u.determinant() - Complex{1.0, 0.0}) > 1e-12)
    throw DecompError("su2_factorize: matrix is not special unitary");
  SU2Factors f;
  const double offdiag = std::abs(u(0, 1)) + std::abs(u(1, 0));
  if (offdiag < 1e-14) {
    f.v = Matrix2::Identity();
    f.d = Matrix2::Zero();
    f.d(0, 0) = u(0, 0);
    f.d(1, 1) = u(1, 1);
    f.a_angle = std::arg(u(0, 0)) / 2.0;
    return f;
  }
  // Trace of an SU(2) matrix is real; eigenvalues are exp(+-i phi).
  const double c = std::clamp((u(0, 0) + u(1, 1)).real() / 2.0, -1.0, 1.0);
  const double phi = std::acos(c);
  const Complex l0 = std::exp(kI * phi);
  const Complex l1 = std::conj(l0);
  Eigen::Vector2cd v0a(u(0, 1), l0 - u(0, 0));
  Eigen::Vector2cd v0b(l0 - u(1, 1), u(1, 0));
  Eigen::Vector2cd v0 = (v0a.norm() >= v0b.norm()) ? v0a : v0b;
  v0.normalize();
  Eigen::Vector2cd v1(-std::conj(v0(1)), std::conj(v0(0)));
  Matrix2 v;
  v.col(0) = v0;
  v.col(1) = v1;
  const Complex dv = v.determinant();
  v *= std::exp(-kI * (std::arg(dv) / 2.0));
  f.v = v;
  f.d = Matrix2::Zero();
  f.d(0, 0) = l0;
  f.d(1, 1) = l1;
  f.a_angle = phi / 2.0;
  return f;
}

Matrix2 principal_sqrt(const Matrix2& u) {
  const double offdiag = std::abs(u(0, 1)) + std::abs(u(1, 0));
  if (offdiag < 1e-14) {
    Matrix2 r = Matrix2::Zero();
    r(0, 0) = std::exp(kI * (std::arg(u(0, 0)) / 2.0));
    r(1, 1) = std::exp(kI * (std::arg(u(1, 1)) / 2.0));
    return r;
  }
  const Complex tr = u(0, 0) + u(1, 1);
  const Complex det = u.determinant();
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l0 = (tr + disc) / 2.0;
  const Complex l1 = (tr - disc) / 2.0;
  Eigen::Vector2cd v0a(u(0, 1), l0 - u(0, 0));
  Eigen::Vector2cd v0b(l0 - u(1, 1), u(1, 0));
  Eigen::Vector2cd v0 = (v0a.norm() >= v0b.norm()) ? v0a : v0b;
  v0.normalize();
  // Eigenspaces of a unitary are orthogonal.
  Eigen::Vector2cd v1(-std::conj(v0(1)), std::conj(v0(0)));
  const Complex s0 = std::exp(kI * (std::arg(l0) / 2.0));
  const Complex s1 = std::exp(kI * (std::arg(l1) / 2.0));
  Matrix2 r = s0 * (v0 * v0.adjoint()) + s1 * (v1 * v1.adjoint());
  return r;
}

// ---------------------------------------------------------------------------
// CU(2) and single-qubit emission

void emit_unitary_1q(const Matrix2& u, QubitRef target, DecompFamily tag,
                     const Sink& sink) {
  const ZYZFactors f = zyz_decompose(u);
  if (f.delta != 0.0) put(sink, Gate::rz(f.delta), target, {}, tag);
  if (f.gamma != 0.0) put(sink, Gate::ry(f.gamma), target, {}, tag);
  if (f.beta != 0.0) put(sink, Gate::rz(f.beta), target, {}, tag);
}

void emit_cu2(const Matrix2& u, double phase, QubitRef control, QubitRef target,
              DecompFamily tag, const Sink& sink) {
  const ZYZFactors f = zyz_decompose(u);
  const double total_phase = wrap_angle(f.alpha + phase);
  // U = e^{i alpha} A X B X C with A B C = I.
  const double c_rz = (f.delta - f.beta) / 2.0;
  const double b_rz = -(f.delta + f.beta) / 2.0;
  const double b_ry = -f.gamma / 2.0;
  const double a_ry = f.gamma / 2.0;
  const double a_rz = f.beta;
  const bool all_identity = c_rz == 0.0 && b_rz == 0.0 && b_ry == 0.0 &&
                            a_ry == 0.0 && a_rz == 0.0;
  if (!all_identity) {
    if (c_rz != 0.0) put(sink, Gate::rz(c_rz), target, {}, tag);
    put_cx(sink, control, target, tag);
    if (b_rz != 0.0) put(sink, Gate::rz(b_rz), target, {}, tag);
    if (b_ry != 0.0) put(sink, Gate::ry(b_ry), target, {}, tag);
    put_cx(sink, control, target, tag);
    if (a_ry != 0.0) put(sink, Gate::ry(a_ry), target, {}, tag);
    if (a_rz != 0.0) put(sink, Gate::rz(a_rz), target, {}, tag);
  }
  if (!near_zero_phase(total_phase))
    put(sink, Gate::phase(total_phase), control, {}, tag);
}

// ---------------------------------------------------------------------------
// Toffoli building blocks

void emit_approx_toffoli(QubitRef c1, QubitRef c2, QubitRef target, bool dagger,
                         DecompFamily tag, const Sink& sink) {
  // Margolus gate: Toffoli up to a -1 phase on one basis state outside the
  // both-controls-on subspace. Self-inverse; `dagger` kept for call-site
  // clarity.
  (void)dagger;
  put(sink, Gate::ry(kPi / 4), target, {}, tag);
  put_cx(sink, c2, target, tag);
  put(sink, Gate::ry(kPi / 4), target, {}, tag);
  put_cx(sink, c1, target, tag);
  put(sink, Gate::ry(-kPi / 4), target, {}, tag);
  put_cx(sink, c2, target, tag);
  put(sink, Gate::ry(-kPi / 4), target, {}, tag);
}

void emit_cnz_phase_poly(Wires wires, DecompFamily tag, const Sink& sink) {
  const int k = static_cast<int>(wires.size());
  if (k == 1) {
    put(sink, Gate::z(), wires[0], {}, tag);
    return;
  }
  const double unit = kPi / static_cast<double>(1ull << (k - 1));
  for (const auto& w : wires) put(sink, Gate::phase(unit), w, {}, tag);
  for (int j = k - 1; j >= 1; --j) {
    // Gray-code parity walk on wires[j] over subsets of wires[0..j).
    const std::uint64_t count = 1ull << j;
    for (std::uint64_t i = 1; i < count; ++i) {
      const int b = std::countr_zero(i);
      put_cx(sink, wires[b], wires[j], tag);
      const std::uint64_t mask = i ^ (i >> 1);
      const int size = std::popcount(mask) + 1;
      const double sign = (size % 2 == 0) ? -1.0 : 1.0;
      put(sink, Gate::phase(sign * unit), wires[j], {}, tag);
    }
    put_cx(sink, wires[j - 1], wires[j], tag);  // gray(2^j - 1) has one bit
  }
}

BasisChange pauli_basis_change(GateKind pauli, QubitRef target) {
  BasisChange bc;
  switch (pauli) {
    case GateKind::PauliX:
      break;
    case GateKind::PauliZ:
      bc.pre.emplace_back(Gate::h(), target);
      bc.post.emplace_back(Gate::h(), target);
      break;
    case GateKind::PauliY:
      bc.pre.emplace_back(Gate::phase(-kPi / 2), target);
      bc.post.emplace_back(Gate::phase(kPi / 2), target);
      break;
    default:
      throw DecompError("pauli_basis_change: not a Pauli gate");
  }
  return bc;
}

namespace {

void emit_with_basis_change(GateKind pauli, QubitRef target, DecompFamily tag,
                            const Sink& sink, const std::function<void()>& core) {
  BasisChange bc = pauli_basis_change(pauli, target);
  for (auto& ins : bc.pre) {
    ins.tag = tag;
    sink(Instruction(ins));
  }
  core();
  for (auto& ins : bc.post) {
    ins.tag = tag;
    sink(Instruction(ins));
  }
}

}  // namespace

void emit_specific_pauli(GateKind pauli, Wires controls, QubitRef target,
                         DecompFamily tag, const Sink& sink) {
  if (controls.size() < 2 || controls.size() > 3)
    throw DecompError("specific pauli decomposition needs 2 or 3 controls");
  std::vector<QubitRef> wires = to_vec(controls);
  wires.push_back(target);
  if (pauli == GateKind::PauliZ) {
    emit_cnz_phase_poly(wires, tag, sink);
    return;
  }
  emit_with_basis_change(pauli, target, tag, sink, [&] {
    put(sink, Gate::h(), target, {}, tag);
    emit_cnz_phase_poly(wires, tag, sink);
    put(sink, Gate::h(), target, {}, tag);
  });
}

namespace {

void emit_exact_toffoli(QubitRef c1, QubitRef c2, QubitRef t, DecompFamily tag,
                        const Sink& sink) {
  const QubitRef cs[2] = {c1, c2};
  emit_specific_pauli(GateKind::PauliX, Wires(cs, 2), t, tag, sink);
}

// ---------------------------------------------------------------------------
// Chain cores (Barenco-style ladders through borrowed or fresh ancillas).
//
// Gate roles for m controls c[0..m), ancillas a[0..m-2), target t:
//   T   = toffoli(c[m-1], a[m-3], t)            (acts on the target)
//   V_i = toffoli(c[i+1], a[i-1], a[i])          i = 1..m-3
//   W   = toffoli(c[0], c[1], a[0])

enum class ChainStyle { Clean, DirtyExact, DirtyRelative };

struct ChainParts {
  Wires c;
  QubitRef t;
  Wires a;
  DecompFamily tag;
  const Sink* sink;
  int m;

  void T(ChainStyle style) const {
    const QubitRef ctl = c[m - 1];
    const QubitRef anc = m == 3 ? a[0] : a[m - 3];
    if (style == ChainStyle::DirtyRelative)
      emit_approx_toffoli(ctl, anc, t, false, tag, *sink);
    else
      emit_exact_toffoli(ctl, anc, t, tag, *sink);
  }
  void W() const { emit_approx_toffoli(c[0], c[1], a[0], false, tag, *sink); }
  void V(int i, bool dagger) const {
    emit_approx_toffoli(c[i + 1], a[i - 1], a[i], dagger, tag, *sink);
  }
  void descending() const {
    for (int i = m - 3; i >= 1; --i) V(i, false);
  }
  void ascending(bool dagger) const {
    for (int i = 1; i <= m - 3; ++i) V(i, dagger);
  }
};

// Dirty chain: T D W Dbar T D W Dbar (Barenco 4-pass; exact for any ancilla
// input). Clean chain: W D T Dbar W (compute / act / uncompute; ancillas
// must start in |0>).
void emit_chain(Wires c, QubitRef t, Wires a, ChainStyle style, DecompFamily tag,
                const Sink& sink) {
  const int m = static_cast<int>(c.size());
  if (m < 3) throw DecompError("chain needs at least 3 controls");
  if (static_cast<int>(a.size()) < m - 2)
    throw DecompError("chain needs m-2 ancillas");
  ChainParts p{c, t, a, tag, &sink, m};
  if (style == ChainStyle::Clean) {
    p.W();
    p.ascending(false);
    p.T(style);
    p.descending();  // adjoint of the compute ladder (Margolus self-inverse)
    p.W();
    return;
  }
  for (int pass = 0; pass < 2; ++pass) {
    p.T(style);
    p.descending();
    p.W();
    p.ascending(true);
  }
}

// Emits [T D W Dbar T]. Used by the conjugation sandwich, where the
// trailing [D W Dbar] of the full chain commutes past the middle and
// cancels against its mirror. The sequence is a palindrome of self-inverse
// gates, so it equals its own adjoint emission.
void emit_chain_half(Wires c, QubitRef t, Wires a, DecompFamily tag,
                     const Sink& sink) {
  const int m = static_cast<int>(c.size());
  ChainParts p{c, t, a, tag, &sink, m};
  p.T(ChainStyle::DirtyRelative);
  p.descending();
  p.W();
  p.ascending(false);
  p.T(ChainStyle::DirtyRelative);
}

// Replays a builder's emission inverted and in reverse order.
void emit_adjoint_of(const std::function<void(const Sink&)>& builder,
                     const Sink& sink) {
  std::vector<Instruction> buffer;
  builder(collect(buffer));
  for (auto it = buffer.rbegin(); it != buffer.rend(); ++it)
    sink(it->inverse());
}

struct SaSplit {
  int m1;  // controls of the A block (first half -> aux)
  int m2;  // controls of the B block (second half + aux -> target)
};

SaSplit sa_split(int k) { return {(k + 1) / 2, k / 2 + 1}; }

}  // namespace

void emit_mcx_exact(Wires controls, QubitRef target, Wires pool,
                    DecompFamily tag, const Sink& sink) {
  const int k = static_cast<int>(controls.size());
  if (k == 0) {
    put(sink, Gate::x(), target, {}, tag);
    return;
  }
  if (k == 1) {
    put_cx(sink, controls[0], target, tag);
    return;
  }
  if (k == 2) {
    emit_exact_toffoli(controls[0], controls[1], target, tag, sink);
    return;
  }
  if (static_cast<int>(pool.size()) >= k - 2) {
    emit_chain(controls, target, pool.subspan(0, k - 2), ChainStyle::DirtyExact,
               tag, sink);
    return;
  }
  if (pool.empty())
    throw DecompError("emit_mcx_exact: no borrowable wire available");
  // Split through one borrowed aux (Barenco Corollary 7.4 style): the halves
  // borrow each other plus the idle target.
  const auto [m1, m2] = sa_split(k);
  const QubitRef aux = pool[0];
  std::vector<QubitRef> h1(controls.begin(), controls.begin() + m1);
  std::vector<QubitRef> h2(controls.begin() + m1, controls.end());
  std::vector<QubitRef> pool_a = h2;
  pool_a.push_back(target);
  pool_a.insert(pool_a.end(), pool.begin() + 1, pool.end());
  std::vector<QubitRef> pool_b = h1;
  pool_b.insert(pool_b.end(), pool.begin() + 1, pool.end());
  std::vector<QubitRef> b_controls = h2;
  b_controls.push_back(aux);
  for (int round = 0; round < 2; ++round) {
    emit_mcx_exact(h1, aux, pool_a, tag, sink);
    emit_mcx_exact(b_controls, target, pool_b, tag, sink);
  }
}

void emit_mcx_relative(Wires controls, QubitRef target, Wires pool,
                       DecompFamily tag, const Sink& sink) {
  const int k = static_cast<int>(controls.size());
  if (k == 0) {
    put(sink, Gate::x(), target, {}, tag);
    return;
  }
  if (k == 1) {
    put_cx(sink, controls[0], target, tag);
    return;
  }
  if (k == 2) {
    emit_approx_toffoli(controls[0], controls[1], target, false, tag, sink);
    return;
  }
  if (static_cast<int>(pool.size()) >= k - 2) {
    emit_chain(controls, target, pool.subspan(0, k - 2),
               ChainStyle::DirtyRelative, tag, sink);
    return;
  }
  if (pool.empty())
    throw DecompError("emit_mcx_relative: no borrowable wire available");
  const auto [m1, m2] = sa_split(k);
  const QubitRef aux = pool[0];
  std::vector<QubitRef> h1(controls.begin(), controls.begin() + m1);
  std::vector<QubitRef> h2(controls.begin() + m1, controls.end());
  std::vector<QubitRef> pool_a = h2;
  pool_a.push_back(target);
  pool_a.insert(pool_a.end(), pool.begin() + 1, pool.end());
  std::vector<QubitRef> pool_b = h1;
  pool_b.insert(pool_b.end(), pool.begin() + 1, pool.end());
  std::vector<QubitRef> b_controls = h2;
  b_controls.push_back(aux);
  for (int round = 0; round < 2; ++round) {
    emit_mcx_relative(h1, aux, pool_a, tag, sink);
    emit_mcx_relative(b_controls, target, pool_b, tag, sink);
  }
}

void emit_mcx_conj_pair(Wires controls, QubitRef target, Wires pool,
                        QubitRef outer_target, DecompFamily tag,
                        const std::function<void()>& middle, const Sink& sink) {
  const int j = static_cast<int>(controls.size());
  // The cancellation below requires the chain internals to stay off the
  // outer target and off `target` (the middle only touches those two).
  std::vector<QubitRef> safe_pool;
  for (const auto& q : pool)
    if (q != target && q != outer_target) safe_pool.push_back(q);

  if (j == 0) {
    put(sink, Gate::x(), target, {}, tag);
    middle();
    put(sink, Gate::x(), target, {}, tag);
    return;
  }
  if (j == 1) {
    put_cx(sink, controls[0], target, tag);
    middle();
    put_cx(sink, controls[0], target, tag);
    return;
  }
  if (j == 2) {
    emit_approx_toffoli(controls[0], controls[1], target, false, tag, sink);
    middle();
    emit_approx_toffoli(controls[0], controls[1], target, true, tag, sink);
    return;
  }
  if (static_cast<int>(safe_pool.size()) >= j - 2) {
    // Half chain, middle, adjoint half chain: the inner [D W Dbar | Dbar W D]
    // passes of the full chain pair commute past the middle and cancel.
    const Wires anc = Wires(safe_pool).subspan(0, j - 2);
    emit_chain_half(controls, target, anc, tag, sink);
    middle();
    emit_chain_half(controls, target, anc, tag, sink);
    return;
  }
  if (!safe_pool.empty()) {
    // Split form [B A B] middle [B A B]^dag: the trailing A block of the
    // B-A-B-A split commutes with the middle and cancels against its mirror.
    const int s = static_cast<int>(safe_pool.size());
    const int m1 = std::min(j - 1, (j + s + 1) / 2);
    const QubitRef aux = safe_pool[0];
    std::vector<QubitRef> h1(controls.begin(), controls.begin() + m1);
    std::vector<QubitRef> h2(controls.begin() + m1, controls.end());
    std::vector<QubitRef> pool_a = h2;
    pool_a.insert(pool_a.end(), safe_pool.begin() + 1, safe_pool.end());
    std::vector<QubitRef> pool_b = h1;
    pool_b.insert(pool_b.end(), safe_pool.begin() + 1, safe_pool.end());
    std::vector<QubitRef> b_controls = h2;
    b_controls.push_back(aux);
    auto pre = [&](const Sink& s_) {
      emit_mcx_relative(b_controls, target, pool_b, tag, s_);
      emit_mcx_relative(h1, aux, pool_a, tag, s_);
      emit_mcx_relative(b_controls, target, pool_b, tag, s_);
    };
    pre(sink);
    middle();
    emit_adjoint_of(pre, sink);
    return;
  }
  // No spare wire at all: fall back to two identical exact MCX borrowing the
  // idle outer target.
  const QubitRef borrow[1] = {outer_target};
  emit_mcx_exact(controls, target, Wires(borrow, 1), tag, sink);
  middle();
  emit_mcx_exact(controls, target, Wires(borrow, 1), tag, sink);
}

// ---------------------------------------------------------------------------
// Decomposition families

void emit_network(const Matrix2& u, double phase, Wires controls,
                  QubitRef target, Wires aux, DecompFamily tag,
                  const Sink& sink) {
  const int n = static_cast<int>(controls.size());
  if (n < 2) throw DecompError("network decomposition needs >= 2 controls");
  if (static_cast<int>(aux.size()) < n - 1)
    throw DecompError("network decomposition needs n-1 clean aux wires");
  emit_approx_toffoli(controls[0], controls[1], aux[0], false, tag, sink);
  for (int i = 2; i < n; ++i)
    emit_approx_toffoli(controls[i], aux[i - 2], aux[i - 1], false, tag, sink);
  emit_cu2(u, phase, aux[n - 2], target, tag, sink);
  for (int i = n - 1; i >= 2; --i)
    emit_approx_toffoli(controls[i], aux[i - 2], aux[i - 1], true, tag, sink);
  emit_approx_toffoli(controls[0], controls[1], aux[0], true, tag, sink);
}

void emit_vchain(GateKind pauli, Wires controls, QubitRef target, Wires aux,
                 bool dirty, DecompFamily tag, const Sink& sink) {
  const int n = static_cast<int>(controls.size());
  if (n < 3) throw DecompError("v-chain needs >= 3 controls");
  if (static_cast<int>(aux.size()) < n - 2)
    throw DecompError("v-chain needs n-2 aux wires");
  emit_with_basis_change(pauli, target, tag, sink, [&] {
    emit_chain(controls, target, aux,
               dirty ? ChainStyle::DirtyExact : ChainStyle::Clean, tag, sink);
  });
}

void emit_single_aux(GateKind pauli, Wires controls, QubitRef target,
                     QubitRef aux, bool dirty, DecompFamily tag,
                     const Sink& sink) {
  const int n = static_cast<int>(controls.size());
  if (n < 3) throw DecompError("single-aux needs >= 3 controls");
  const auto [m1, m2] = sa_split(n);
  std::vector<QubitRef> h1(controls.begin(), controls.begin() + m1);
  std::vector<QubitRef> h2(controls.begin() + m1, controls.end());
  std::vector<QubitRef> pool_a = h2;
  pool_a.push_back(target);
  std::vector<QubitRef> pool_b = h1;
  std::vector<QubitRef> b_controls = h2;
  b_controls.push_back(aux);
  emit_with_basis_change(pauli, target, tag, sink, [&] {
    emit_mcx_exact(h1, aux, pool_a, tag, sink);
    emit_mcx_exact(b_controls, target, pool_b, tag, sink);
    emit_mcx_exact(h1, aux, pool_a, tag, sink);
    if (dirty) emit_mcx_exact(b_controls, target, pool_b, tag, sink);
  });
}

void emit_su2(const Matrix2& u, Wires controls, QubitRef target,
              DecompFamily tag, const Sink& sink) {
  const int n = static_cast<int>(controls.size());
  if ((u - Matrix2::Identity()).cwiseAbs().maxCoeff() < 1e-12) return;
  if (n == 0) {
    emit_unitary_1q(u, target, tag, sink);
    return;
  }
  if (n == 1) {
    emit_cu2(u, 0.0, controls[0], target, tag, sink);
    return;
  }
  const SU2Factors f = su2_factorize(u);
  const int k0 = n / 2;
  std::vector<QubitRef> h0(controls.begin(), controls.begin() + k0);
  std::vector<QubitRef> h1(controls.begin() + k0, controls.end());
  const Matrix2 vdg = f.v.adjoint();
  auto chain0 = [&] { emit_mcx_exact(h0, target, h1, tag, sink); };
  auto chain1 = [&] { emit_mcx_exact(h1, target, h0, tag, sink); };
  emit_unitary_1q(vdg, target, tag, sink);
  for (int round = 0; round < 2; ++round) {
    chain0();
    put(sink, Gate::rz(f.a_angle), target, {}, tag);
    chain1();
    put(sink, Gate::rz(-f.a_angle), target, {}, tag);
  }
  emit_unitary_1q(f.v, target, tag, sink);
}

void emit_su2_rewrite_hadamard(Wires controls, QubitRef target, QubitRef aux,
                               DecompFamily tag, const Sink& sink) {
  // H = i * Rx(pi) Ry(pi/2); the i becomes Rz(-pi) on the clean aux.
  const Matrix2 hbar = Gate::rx(kPi).matrix() * Gate::ry(kPi / 2).matrix();
  emit_su2(hbar, controls, target, tag, sink);
  emit_su2(Gate::rz(-kPi).matrix(), controls, aux, tag, sink);
}

void emit_su2_rewrite_phase(double theta, Wires controls, QubitRef target,
                            QubitRef aux, DecompFamily tag, const Sink& sink) {
  std::vector<QubitRef> all = to_vec(controls);
  all.push_back(target);
  emit_su2(Gate::rz(-2.0 * theta).matrix(), all, aux, tag, sink);
}

void emit_linear_depth(const Matrix2& u, double phase, Wires controls,
                       QubitRef target, Wires pool, DecompFamily tag,
                       const Sink& sink) {
  const int n = static_cast<int>(controls.size());
  Matrix2 m = u;
  if (phase != 0.0) m *= std::exp(kI * phase);
  if (n == 0) {
    emit_unitary_1q(m, target, tag, sink);
    return;
  }
  if (n == 1) {
    emit_cu2(m, 0.0, controls[0], target, tag, sink);
    return;
  }
  if (std::abs(m.determinant() - Complex{1.0, 0.0}) < 1e-12) {
    emit_su2(m, controls, target, tag, sink);
    return;
  }
  // Square-root recursion: CV, MCX, CV^dag, MCX, C^{n-1}V with V*V = m.
  const Matrix2 v = principal_sqrt(m);
  const Matrix2 vdg = v.adjoint();
  const QubitRef last = controls[n - 1];
  const Wires rest = controls.subspan(0, n - 1);
  emit_cu2(v, 0.0, last, target, tag, sink);
  emit_mcx_conj_pair(rest, last, pool, target, tag,
                     [&] { emit_cu2(vdg, 0.0, last, target, tag, sink); }, sink);
  const bool diagonal = std::abs(m(0, 1)) + std::abs(m(1, 0)) < 1e-14;
  std::vector<QubitRef> deeper_pool(pool.begin(), pool.end());
  deeper_pool.push_back(last);
  if (diagonal || n - 1 == 1) {
    emit_linear_depth(v, 0.0, rest, target, deeper_pool, tag, sink);
    return;
  }
  // Split the controlled square root into its special-unitary part plus a
  // recursive controlled-phase correction.
  const double alpha = std::arg(v.determinant()) / 2.0;
  if (!near_zero_phase(alpha)) {
    std::vector<QubitRef> corr_pool = deeper_pool;
    corr_pool.push_back(target);
    const QubitRef corr_target = rest[n - 2];
    const Wires corr_controls = rest.subspan(0, n - 2);
    emit_linear_depth(Gate::phase(alpha).matrix(), 0.0, corr_controls,
                      corr_target, corr_pool, tag, sink);
  }
  const Matrix2 vbar = v * std::exp(-kI * alpha);
  emit_su2(vbar, rest, target, tag, sink);
}

// ---------------------------------------------------------------------------
// Standalone operation wrappers

std::vector<Instruction> decompose_cu2(Gate gate, double global_phase,
                                       QubitRef control, QubitRef target) {
  std::vector<Instruction> out;
  emit_cu2(gate.matrix(), global_phase, control, target, DecompFamily::CU2,
           collect(out));
  return out;
}

std::vector<Instruction> decompose_specific_pauli(GateKind pauli, Wires controls,
                                                  QubitRef target) {
  std::vector<Instruction> out;
  emit_specific_pauli(pauli, controls, target, DecompFamily::SpecificPauli,
                      collect(out));
  return out;
}

std::vector<Instruction> approx_toffoli(QubitRef c1, QubitRef c2,
                                        QubitRef target) {
  std::vector<Instruction> out;
  emit_approx_toffoli(c1, c2, target, false, DecompFamily::ApproxToffoli,
                      collect(out));
  return out;
}

std::vector<Instruction> decompose_network(Gate gate, double global_phase,
                                           Wires controls, QubitRef target,
                                           Wires aux) {
  std::vector<Instruction> out;
  emit_network(gate.matrix(), global_phase, controls, target, aux,
               DecompFamily::Network, collect(out));
  return out;
}

std::vector<Instruction> decompose_vchain(GateKind pauli, Wires controls,
                                          QubitRef target, Wires aux,
                                          bool dirty) {
  std::vector<Instruction> out;
  emit_vchain(pauli, controls, target, aux, dirty, DecompFamily::VChain,
              collect(out));
  return out;
}

std::vector<Instruction> decompose_single_aux(GateKind pauli, Wires controls,
                                              QubitRef target, QubitRef aux,
                                              bool dirty) {
  std::vector<Instruction> out;
  emit_single_aux(pauli, controls, target, aux, dirty, DecompFamily::SingleAux,
                  collect(out));
  return out;
}

std::vector<Instruction> decompose_su2(Gate gate, Wires controls,
                                       QubitRef target) {
  std::vector<Instruction> out;
  emit_su2(gate.matrix(), controls, target, DecompFamily::SU2, collect(out));
  return out;
}

std::vector<Instruction> decompose_su2_rewrite(Gate gate, Wires controls,
                                               QubitRef target, QubitRef aux) {
  std::vector<Instruction> out;
  if (gate.kind == GateKind::Hadamard) {
    emit_su2_rewrite_hadamard(controls, target, aux, DecompFamily::SU2Rewrite,
                              collect(out));
  } else if (gate.kind == GateKind::Phase) {
    emit_su2_rewrite_phase(gate.angle, controls, target, aux,
                           DecompFamily::SU2Rewrite, collect(out));
  } else {
    throw DecompError("su2 rewrite handles Hadamard and Phase gates");
  }
  return out;
}

std::vector<Instruction> decompose_linear_depth(Gate gate, double global_phase,
                                                Wires controls, QubitRef target,
                                                Wires pool) {
  std::vector<Instruction> out;
  emit_linear_depth(gate.matrix(), global_phase, controls, target, pool,
                    DecompFamily::LinearDepth, collect(out));
  return out;
}

std::vector<Instruction> phase_correction(const std::vector<QubitRef>& controls,
                                          double phi) {
  if (phi == 0.0 || controls.empty()) return {};
  std::vector<QubitRef> rest(controls.begin(), controls.end() - 1);
  return {Instruction(Gate::phase(phi), controls.back(), std::move(rest))};
}

}  // namespace qdecomp::decomp

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

#include "qdecomp/compiler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "qdecomp/decomp.hpp"

namespace qdecomp::compiler {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPhaseTol = 1e-12;

double wrap_angle(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

bool phase_absent(double a) { return std::abs(wrap_angle(a)) <= kPhaseTol; }

}  // namespace

DecompChoice select_decomposition(const SelectionContext& ctx, Policy policy) {
  const int n = ctx.n_controls;
  if (n <= 1) return {DecompFamily::CU2, 0, AuxRequirement::NotApplicable};

  int clean_avail = 0;
  for (const auto& q : ctx.clean)
    if (!ctx.gate_qubits.count(q)) ++clean_avail;
  clean_avail = std::max(0, clean_avail - ctx.reserved_clean);
  const int width = static_cast<int>(ctx.gate_qubits.size());

  const auto clean_ok = [&](int need) { return clean_avail >= need; };
  const auto dirty_ok = [&](int need) {
    return need + width + ctx.reserved_clean <= ctx.qpu_total;
  };

  switch (ctx.gate_class) {
    case GateClass::Pauli:
      if (n <= 3)
        return {DecompFamily::SpecificPauli, 0, AuxRequirement::NotApplicable};
      if (policy == Policy::Auto) {
        if (clean_ok(n - 2)) return {DecompFamily::VChain, n - 2, AuxRequirement::Clean};
        if (dirty_ok(n - 2)) return {DecompFamily::VChain, n - 2, AuxRequirement::Dirty};
        if (clean_ok(1)) return {DecompFamily::SingleAux, 1, AuxRequirement::Clean};
        if (dirty_ok(1)) return {DecompFamily::SingleAux, 1, AuxRequirement::Dirty};
      }
      return {DecompFamily::LinearDepth, 0, AuxRequirement::NotApplicable};
    case GateClass::Rotation:
      if (policy == Policy::Auto && clean_ok(n - 1))
        return {DecompFamily::Network, n - 1, AuxRequirement::Clean};
      return {DecompFamily::SU2, 0, AuxRequirement::NotApplicable};
    case GateClass::PhaseGate:
    case GateClass::HadamardGate:
      if (policy == Policy::Auto) {
        if (clean_ok(n - 1)) return {DecompFamily::Network, n - 1, AuxRequirement::Clean};
        if (clean_ok(1)) return {DecompFamily::SU2Rewrite, 1, AuxRequirement::Clean};
      }
      return {DecompFamily::LinearDepth, 0, AuxRequirement::NotApplicable};
  }
  return {DecompFamily::LinearDepth, 0, AuxRequirement::NotApplicable};
}

std::vector<Instruction> fuse_around_phases(const std::vector<Instruction>& in) {
  std::vector<Instruction> out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    if (i + 3 < in.size()) {
      const Instruction& x1 = in[i];
      const Instruction& p1 = in[i + 1];
      const Instruction& x2 = in[i + 2];
      const Instruction& p2 = in[i + 3];
      const bool conj_x = x1.around_conj && x2.around_conj &&
                          x1.gate.kind == GateKind::PauliX &&
                          x2.gate.kind == GateKind::PauliX &&
                          x1.controls.empty() && x2.controls.empty() &&
                          x1.target == x2.target;
      const bool phase_pair =
          p1.gate.kind == GateKind::Phase && p2.gate.kind == GateKind::Phase &&
          !p1.around_conj && !p2.around_conj && p1.target == x1.target &&
          p2.target == x1.target && p1.controls == p2.controls &&
          p1.global_phase == 0.0 && p2.global_phase == 0.0;
      if (conj_x && phase_pair) {
        // X P(a) X P(b) on the target equals diag(e^{ia}, e^{ib}), i.e.
        // Rz(b-a) with global phase (a+b)/2.
        const double a = p1.gate.angle;
        const double b = p2.gate.angle;
        out.emplace_back(Gate::rz(b - a), x1.target, p1.controls,
                         (a + b) / 2.0);
        i += 4;
        continue;
      }
    }
    out.push_back(in[i]);
    ++i;
  }
  return out;
}

namespace {

class Lowerer {
 public:
  Lowerer(const Circuit& input, QpuSpec qpu, CompileOptions opt)
      : input_(input), qpu_(qpu), opt_(opt), dirty_(qpu.total, false) {
    if (opt.store_instructions) out_.emplace(qpu);
    for (const auto& ins : input.instructions()) {
      note_allocated(ins.target);
      for (const auto& c : ins.controls) note_allocated(c);
    }
    for (const auto& q : input.measured()) note_allocated(q);
  }

  CompileResult run() {
    const auto fused = fuse_around_phases(input_.instructions());
    for (std::size_t i = 0; i < fused.size(); ++i) {
      current_source_ = i;
      const Instruction& ins = fused[i];
      if (!ins.around_conj) {
        mark_dirty(ins.target);
        for (const auto& c : ins.controls) mark_dirty(c);
      }
      lower(ins, std::nullopt);
    }
    CompileResult result;
    if (out_) {
      for (int q = 0; q < qpu_.total; ++q)
        if (dirty_[q]) out_->mark_dirty(QubitRef::main(q));
      if (input_.has_measurement()) out_->measure(input_.measured());
      result.circuit = std::move(out_);
    }
    result.report.choices = std::move(choices_);
    result.report.groups = std::move(host_records_);
    result.report.stats = stats_;
    return result;
  }

 private:
  void note_allocated(QubitRef q) {
    if (!q.is_main())
      throw CompileError("input circuit references an auxiliary line");
    if (q.index >= qpu_.total)
      throw CompileError("capacity exceeded: input uses qubit " +
                         std::to_string(q.index) + " on a " +
                         std::to_string(qpu_.total) + "-qubit QPU");
    allocated_.insert(q);
  }

  void mark_dirty(QubitRef q) {
    if (q.is_main() && q.index < qpu_.total) dirty_[q.index] = true;
  }

  // Clean-for-auxiliary-use follows the allocation view: a qubit the
  // program never holds is guaranteed |0>, and hosting restores it, so it
  // stays available. Qubits handed to the program are never counted even
  // before their first gate.
  bool clean_for_aux(QubitRef q) const {
    return q.is_main() && q.index < qpu_.total && !allocated_.count(q);
  }

  // ---- emission -----------------------------------------------------------

  void emit(Instruction&& ins) {
    if (ins.controls.size() == 1) {
      ilog_.record(ins.controls[0], ins.target, time_);
      if (ins.gate.kind == GateKind::PauliX) {
        ++stats_.cnot_total;
        ++stats_.per_algorithm[ins.tag];
      }
    }
    ++time_;
    if (out_) out_->push(std::move(ins), /*marks_dirty=*/false);
  }

  decomp::Sink sink() {
    return [this](Instruction&& ins) { emit(std::move(ins)); };
  }

  // ---- selection context --------------------------------------------------

  SelectionContext make_context(const std::vector<QubitRef>& controls,
                                QubitRef target, GateClass cls) const {
    SelectionContext ctx;
    ctx.qpu_total = qpu_.total;
    ctx.allocated = allocated_;
    for (int q = 0; q < qpu_.total; ++q)
      if (clean_for_aux(QubitRef::main(q))) ctx.clean.insert(QubitRef::main(q));
    ctx.gate_class = cls;
    ctx.n_controls = static_cast<int>(controls.size());
    ctx.gate_qubits.insert(controls.begin(), controls.end());
    ctx.gate_qubits.insert(target);
    ctx.reserved_clean = reserved_clean_;
    return ctx;
  }

  std::vector<QubitRef> borrow_pool(const std::vector<QubitRef>& controls,
                                    QubitRef target) const {
    std::vector<QubitRef> pool;
    for (int q = 0; q < qpu_.total; ++q) {
      const QubitRef m = QubitRef::main(q);
      if (m == target) continue;
      if (std::find(controls.begin(), controls.end(), m) != controls.end())
        continue;
      pool.push_back(m);
    }
    return pool;
  }

  // ---- aux groups and allocation (Algorithms 1 and 2) ----------------------

  AuxGroup make_group(const std::vector<QubitRef>& controls, QubitRef target,
                      const DecompChoice& choice) {
    AuxGroup g;
    g.group_id = next_group_++;
    g.required_state = choice.aux_state;
    g.start_time = time_;
    for (int i = 0; i < choice.aux_count; ++i)
      g.aux.push_back(QubitRef::aux(g.group_id, i));
    for (const auto& c : controls)
      if (c.is_main()) g.gate_wires.insert(c);
    if (target.is_main()) g.gate_wires.insert(target);
    if (choice.aux_state == AuxRequirement::Dirty)
      g.interaction_group = g.gate_wires;
    return g;
  }

  HostEntry select_main(QubitRef a, const AuxGroup& g,
                        const std::set<QubitRef>& hosted,
                        const std::set<QubitRef>& aux_set) {
    const auto order = opt_.interaction_order;
    const bool dirty_group = !g.interaction_group.empty();
    const auto acceptable = [&](QubitRef c) {
      if (!c.is_main()) return false;
      if (aux_set.count(c) || hosted.count(c)) return false;
      // Never host an auxiliary on a wire of the gate it serves.
      if (g.gate_wires.count(c)) return false;
      return true;
    };
    // Phase 1: follow the interaction chains. A candidate c that already
    // interacts with a qubit a interacts with introduces no new interaction.
    for (const auto& i : ilog_.partners(a, order)) {
      if (aux_set.count(i)) continue;  // partners of group members add nothing
      auto partners = ilog_.partners(i, order);
      for (auto it = partners.rbegin(); it != partners.rend(); ++it) {
        const QubitRef c = *it;
        if (!acceptable(c)) continue;
        if (dirty_group) {
          if (!g.interaction_group.count(c)) return {a, c, true, i};
        } else if (clean_for_aux(c)) {
          return {a, c, true, i};
        }
      }
    }
    // Phase 2: first clean qubit, then any main outside the interaction
    // group.
    for (int q = 0; q < qpu_.total; ++q) {
      const QubitRef c = QubitRef::main(q);
      if (clean_for_aux(c) && acceptable(c)) return {a, c, false, a};
    }
    if (!dirty_group)
      throw CompileError("allocation impossible: clean host arithmetic violated");
    for (int q = 0; q < qpu_.total; ++q) {
      const QubitRef c = QubitRef::main(q);
      if (acceptable(c)) return {a, c, false, a};
    }
    throw CompileError("allocation impossible: feasibility arithmetic violated");
  }

  void allocate_aux(const AuxGroup& g) {
    if (g.aux.empty()) return;
    std::set<QubitRef> aux_set(g.aux.begin(), g.aux.end());
    std::set<QubitRef> hosted;
    HostRecord record;
    record.group_id = g.group_id;
    record.required_state = g.required_state;
    record.interaction_group = g.interaction_group;
    for (const auto& a : g.aux) {
      const HostEntry entry = select_main(a, g, hosted, aux_set);
      if (entry.via_phase1) {
        // Literal phase-1 membership: the host must already interact with a
        // qubit the auxiliary interacts with.
        const auto chain = ilog_.partners(entry.via, opt_.interaction_order);
        if (std::find(chain.begin(), chain.end(), entry.host) == chain.end())
          throw CompileError("phase-1 host is not an interaction partner");
      }
      if (!g.interaction_group.empty() &&
          g.interaction_group.count(entry.host))
        throw CompileError("dirty auxiliary hosted inside its interaction group");
      assert(!hosted.count(entry.host));
      hosted.insert(entry.host);
      ilog_.merge(a, entry.host);
      if (out_) out_->rewrite_qubit(a, entry.host, g.start_time);
      record.hosts.push_back(entry);
    }
    host_records_.push_back(std::move(record));
  }

  // ---- lowering -----------------------------------------------------------

  void record_choice(const Instruction& ins, const DecompChoice& choice) {
    ChoiceRecord r;
    r.source_index = current_source_;
    r.gate = ins.gate;
    r.n_controls = static_cast<int>(ins.controls.size());
    r.choice = choice;
    r.nested = depth_ > 0;
    choices_.push_back(r);
  }

  // Lowers a multi-controlled special-unitary given as a matrix (rewrite
  // inners re-enter selection through here).
  void lower_su2_matrix(const Matrix2& u, const std::vector<QubitRef>& controls,
                        QubitRef target, DecompFamily tag) {
    ++depth_;
    SelectionContext ctx = make_context(controls, target, GateClass::Rotation);
    const DecompChoice choice = select_decomposition(ctx, opt_.policy);
    Instruction pseudo(Gate::rz(0), target, controls);
    record_choice(pseudo, choice);
    if (choice.family == DecompFamily::Network) {
      AuxGroup g = make_group(controls, target, choice);
      decomp::emit_network(u, 0.0, controls, target, g.aux, tag, sink());
      allocate_aux(g);
    } else {
      decomp::emit_su2(u, controls, target, tag, sink());
    }
    --depth_;
  }

  void lower(const Instruction& ins, std::optional<DecompFamily> forced) {
    const std::size_t k = ins.controls.size();
    const double phase = phase_absent(ins.global_phase) ? 0.0 : ins.global_phase;
    const auto tag_or = [&](DecompFamily f) { return forced.value_or(f); };

    // Identity elision (exact zero angles only).
    if (ins.gate.has_angle() && ins.gate.angle == 0.0) {
      if (phase == 0.0) return;
      // Pure controlled global phase: a (k-1)-controlled Phase on the
      // controls; the target plays no role.
      if (k == 0) return;
      auto corr = decomp::phase_correction(ins.controls, phase);
      for (auto& c : corr) lower(c, forced);
      return;
    }

    if (k == 0) {
      // Global phase on an uncontrolled gate is unobservable and dropped.
      Instruction out(ins.gate, ins.target, {}, 0.0, tag_or(DecompFamily::None));
      out.around_conj = ins.around_conj;
      emit(std::move(out));
      return;
    }

    const bool is_x = ins.gate.kind == GateKind::PauliX;
    if (k == 1 && is_x && phase == 0.0) {
      Instruction out(ins.gate, ins.target, ins.controls, 0.0,
                      tag_or(DecompFamily::None));
      emit(std::move(out));
      return;
    }

    if (k == 1) {
      if (is_x) {
        // CX with a decorated phase: the correction is an uncontrolled
        // phase gate on the control.
        emit(Instruction(Gate::phase(phase), ins.controls[0], {}, 0.0,
                         tag_or(DecompFamily::None)));
        emit(Instruction(Gate::x(), ins.target, ins.controls, 0.0,
                         tag_or(DecompFamily::None)));
        return;
      }
      const DecompChoice choice{DecompFamily::CU2, 0,
                                AuxRequirement::NotApplicable};
      record_choice(ins, choice);
      decomp::emit_cu2(ins.gate.matrix(), phase, ins.controls[0], ins.target,
                       tag_or(DecompFamily::CU2), sink());
      return;
    }

    // Multi-controlled. Select first; the Network family absorbs a global
    // phase in its apex CU(2), every other family needs the correction
    // extracted as its own gate.
    const GateClass cls = ins.gate.gate_class();
    SelectionContext ctx = make_context(ins.controls, ins.target, cls);
    const DecompChoice choice = select_decomposition(ctx, opt_.policy);
    double absorbed = 0.0;
    if (phase != 0.0) {
      if (choice.family == DecompFamily::Network) {
        absorbed = phase;
      } else {
        ++depth_;
        auto corr = decomp::phase_correction(ins.controls, phase);
        for (auto& c : corr) lower(c, forced);
        --depth_;
      }
    }
    record_choice(ins, choice);

    switch (choice.family) {
      case DecompFamily::SpecificPauli:
        decomp::emit_specific_pauli(ins.gate.kind, ins.controls, ins.target,
                                    tag_or(DecompFamily::SpecificPauli), sink());
        return;
      case DecompFamily::VChain: {
        AuxGroup g = make_group(ins.controls, ins.target, choice);
        decomp::emit_vchain(ins.gate.kind, ins.controls, ins.target, g.aux,
                            choice.aux_state == AuxRequirement::Dirty,
                            tag_or(DecompFamily::VChain), sink());
        allocate_aux(g);
        return;
      }
      case DecompFamily::SingleAux: {
        AuxGroup g = make_group(ins.controls, ins.target, choice);
        decomp::emit_single_aux(ins.gate.kind, ins.controls, ins.target,
                                g.aux[0],
                                choice.aux_state == AuxRequirement::Dirty,
                                tag_or(DecompFamily::SingleAux), sink());
        allocate_aux(g);
        return;
      }
      case DecompFamily::Network: {
        AuxGroup g = make_group(ins.controls, ins.target, choice);
        decomp::emit_network(ins.gate.matrix(), absorbed, ins.controls,
                             ins.target, g.aux, tag_or(DecompFamily::Network),
                             sink());
        allocate_aux(g);
        return;
      }
      case DecompFamily::SU2:
        decomp::emit_su2(ins.gate.matrix(), ins.controls, ins.target,
                         tag_or(DecompFamily::SU2), sink());
        return;
      case DecompFamily::SU2Rewrite: {
        AuxGroup g = make_group(ins.controls, ins.target, choice);
        const QubitRef aux = g.aux[0];
        const DecompFamily tag = tag_or(DecompFamily::SU2Rewrite);
        ++depth_;
        ++reserved_clean_;
        if (ins.gate.kind == GateKind::Hadamard) {
          const Matrix2 hbar =
              Gate::rx(kPi).matrix() * Gate::ry(kPi / 2).matrix();
          lower_su2_matrix(hbar, ins.controls, ins.target, tag);
          lower_su2_matrix(Gate::rz(-kPi).matrix(), ins.controls, aux, tag);
        } else if (ins.gate.kind == GateKind::Phase) {
          std::vector<QubitRef> all = ins.controls;
          all.push_back(ins.target);
          lower_su2_matrix(Gate::rz(-2.0 * ins.gate.angle).matrix(), all, aux,
                           tag);
        } else {
          throw CompileError("su2 rewrite selected for a non Phase/Hadamard gate");
        }
        --reserved_clean_;
        --depth_;
        allocate_aux(g);
        return;
      }
      case DecompFamily::LinearDepth: {
        const auto pool = borrow_pool(ins.controls, ins.target);
        decomp::emit_linear_depth(ins.gate.matrix(), 0.0, ins.controls,
                                  ins.target, pool,
                                  tag_or(DecompFamily::LinearDepth), sink());
        return;
      }
      case DecompFamily::CU2:
      case DecompFamily::ApproxToffoli:
      case DecompFamily::None:
        break;
    }
    throw CompileError("unreachable decomposition dispatch");
  }

  const Circuit& input_;
  QpuSpec qpu_;
  CompileOptions opt_;
  std::vector<bool> dirty_;
  std::set<QubitRef> allocated_;
  InteractionLog ilog_;
  std::uint64_t time_ = 0;
  std::optional<Circuit> out_;
  GateStats stats_;
  int next_group_ = 0;
  std::vector<HostRecord> host_records_;
  std::vector<ChoiceRecord> choices_;
  std::size_t current_source_ = 0;
  int reserved_clean_ = 0;
  int depth_ = 0;
};

}  // namespace

CompileResult compile(const Circuit& input, QpuSpec qpu, CompileOptions options) {
  if (qpu.total < 1) throw CompileError("qpu must have at least one qubit");
  Lowerer lowerer(input, qpu, options);
  return lowerer.run();
}

}  // namespace qdecomp::compiler

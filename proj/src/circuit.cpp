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

#include "qdecomp/circuit.hpp"

#include <algorithm>

namespace qdecomp {

void InteractionLog::record(QubitRef a, QubitRef b, std::uint64_t time) {
  log_[a].try_emplace(b, time);
  log_[b].try_emplace(a, time);
}

std::vector<QubitRef> InteractionLog::partners(QubitRef q,
                                               InteractionOrder order) const {
  auto it = log_.find(q);
  if (it == log_.end()) return {};
  std::vector<std::pair<QubitRef, std::uint64_t>> entries(it->second.begin(),
                                                          it->second.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& x, const auto& y) { return x.second < y.second; });
  if (order == InteractionOrder::LastContact)
    std::reverse(entries.begin(), entries.end());
  std::vector<QubitRef> out;
  out.reserve(entries.size());
  for (const auto& [p, t] : entries) out.push_back(p);
  return out;
}

void InteractionLog::merge(QubitRef from, QubitRef to) {
  if (from == to) return;
  auto it = log_.find(from);
  if (it == log_.end()) return;
  auto moved = std::move(it->second);
  log_.erase(it);
  for (const auto& [partner, time] : moved) {
    auto& plog = log_[partner];
    plog.erase(from);
    if (partner == to) continue;  // self edges never exist after a merge
    auto [pit, inserted] = plog.try_emplace(to, time);
    if (!inserted) pit->second = std::min(pit->second, time);
    auto& tlog = log_[to];
    auto [tit, tinserted] = tlog.try_emplace(partner, time);
    if (!tinserted) tit->second = std::min(tit->second, time);
  }
  // A partner list emptied by the erase above is harmless; keep it.
}

void Circuit::push(Instruction ins, bool marks_dirty) {
  const std::uint64_t t = instructions_.size();
  if (ins.controls.size() == 1) interactions_.record(ins.controls[0], ins.target, t);
  if (marks_dirty && !ins.around_conj) {
    mark_dirty(ins.target);
    for (const auto& c : ins.controls) mark_dirty(c);
  }
  instructions_.push_back(std::move(ins));
}

void Circuit::measure(const std::vector<QubitRef>& qubits) {
  for (const auto& q : qubits) {
    mark_dirty(q);
    measured_.push_back(q);
  }
}

Circuit Circuit::gates_only() const {
  Circuit c = *this;
  c.measured_.clear();
  return c;
}

bool Circuit::is_dirty(QubitRef q) const {
  if (q.is_main()) {
    if (q.index < 0 || q.index >= static_cast<int>(main_dirty_.size())) return false;
    return main_dirty_[q.index];
  }
  return dirty_aux_.count(q) > 0;
}

void Circuit::mark_dirty(QubitRef q) {
  if (q.is_main()) {
    if (q.index >= 0 && q.index < static_cast<int>(main_dirty_.size()))
      main_dirty_[q.index] = true;
  } else {
    dirty_aux_.insert(q);
  }
}

std::set<QubitRef> Circuit::clean_qubits() const {
  std::set<QubitRef> out;
  for (int i = 0; i < qpu_.total; ++i)
    if (!main_dirty_[i]) out.insert(QubitRef::main(i));
  return out;
}

void Circuit::rewrite_qubit(QubitRef from, QubitRef to, std::size_t from_index) {
  for (std::size_t i = from_index; i < instructions_.size(); ++i) {
    auto& ins = instructions_[i];
    if (ins.target == from) ins.target = to;
    for (auto& c : ins.controls)
      if (c == from) c = to;
  }
  interactions_.merge(from, to);
  dirty_aux_.erase(from);
}

GateStats gate_stats(const Circuit& circuit) {
  GateStats stats;
  for (const auto& ins : circuit.instructions()) {
    if (ins.target.is_aux())
      throw CircuitError("not compiled: instruction references an auxiliary line");
    for (const auto& c : ins.controls)
      if (c.is_aux())
        throw CircuitError("not compiled: instruction references an auxiliary line");
    if (ins.controls.size() > 1)
      throw CircuitError("not compiled: control list longer than 1");
    if (ins.controls.size() == 1) {
      if (ins.gate.kind != GateKind::PauliX)
        throw CircuitError("not compiled: controlled gate is not PauliX");
      ++stats.cnot_total;
      ++stats.per_algorithm[ins.tag];
    }
  }
  return stats;
}

}  // namespace qdecomp

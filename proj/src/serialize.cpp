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

#include "qdecomp/serialize.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace qdecomp::io {

namespace {

using nlohmann::json;

const std::map<std::string, GateKind>& gate_names() {
  static const std::map<std::string, GateKind> names = {
      {"x", GateKind::PauliX}, {"y", GateKind::PauliY},
      {"z", GateKind::PauliZ}, {"rx", GateKind::RotX},
      {"ry", GateKind::RotY},  {"rz", GateKind::RotZ},
      {"p", GateKind::Phase},  {"h", GateKind::Hadamard}};
  return names;
}

const std::map<std::string, DecompFamily>& family_names() {
  static const std::map<std::string, DecompFamily> names = {
      {"cu2", DecompFamily::CU2},
      {"specific-pauli", DecompFamily::SpecificPauli},
      {"approx-toffoli", DecompFamily::ApproxToffoli},
      {"network", DecompFamily::Network},
      {"v-chain", DecompFamily::VChain},
      {"single-aux", DecompFamily::SingleAux},
      {"su2", DecompFamily::SU2},
      {"su2-rewrite", DecompFamily::SU2Rewrite},
      {"linear-depth", DecompFamily::LinearDepth}};
  return names;
}

int main_index(const QubitRef& q) {
  if (!q.is_main())
    throw IoError("only fully allocated circuits are serializable");
  return q.index;
}

}  // namespace

void write_circuit(const Circuit& circuit, std::ostream& os) {
  os << json{{"qubits", circuit.qpu().total}}.dump() << '\n';
  for (const auto& ins : circuit.instructions()) {
    json j;
    j["gate"] = ins.gate.name();
    j["params"] = ins.gate.has_angle() ? json::array({ins.gate.angle})
                                       : json::array();
    j["target"] = main_index(ins.target);
    json controls = json::array();
    for (const auto& c : ins.controls) controls.push_back(main_index(c));
    j["controls"] = std::move(controls);
    j["tag"] = ins.tag == DecompFamily::None ? json(nullptr)
                                             : json(family_name(ins.tag));
    if (ins.global_phase != 0.0) j["global_phase"] = ins.global_phase;
    if (ins.around_conj) j["conj"] = true;
    os << j.dump() << '\n';
  }
  if (circuit.has_measurement()) {
    json m = json::array();
    for (const auto& q : circuit.measured()) m.push_back(main_index(q));
    os << json{{"measure", std::move(m)}}.dump() << '\n';
  }
}

std::string circuit_to_string(const Circuit& circuit) {
  std::ostringstream os;
  write_circuit(circuit, os);
  return os.str();
}

Circuit read_circuit(std::istream& is) {
  std::string line;
  bool have_header = false;
  int qubits = 0;
  std::vector<Instruction> instructions;
  std::vector<QubitRef> measured;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_header) {
      if (!j.contains("qubits") || !j["qubits"].is_number_integer())
        throw IoError("first line must be the {\"qubits\": N} header");
      qubits = j["qubits"].get<int>();
      if (qubits < 1) throw IoError("qubit count must be positive");
      have_header = true;
      continue;
    }
    if (j.contains("measure")) {
      for (const auto& v : j["measure"])
        measured.push_back(QubitRef::main(v.get<int>()));
      continue;
    }
    Instruction ins;
    const std::string name = j.at("gate").get<std::string>();
    auto it = gate_names().find(name);
    if (it == gate_names().end()) throw IoError("unknown gate: " + name);
    ins.gate.kind = it->second;
    if (ins.gate.has_angle()) {
      const auto& params = j.at("params");
      if (!params.is_array() || params.size() != 1)
        throw IoError("gate " + name + " takes one angle parameter");
      ins.gate.angle = params[0].get<double>();
    }
    ins.target = QubitRef::main(j.at("target").get<int>());
    for (const auto& v : j.at("controls"))
      ins.controls.push_back(QubitRef::main(v.get<int>()));
    if (j.contains("tag") && !j["tag"].is_null()) {
      const std::string tag = j["tag"].get<std::string>();
      auto fit = family_names().find(tag);
      if (fit == family_names().end()) throw IoError("unknown tag: " + tag);
      ins.tag = fit->second;
    }
    if (j.contains("global_phase")) ins.global_phase = j["global_phase"].get<double>();
    if (j.contains("conj")) ins.around_conj = j["conj"].get<bool>();
    instructions.push_back(std::move(ins));
  }
  if (!have_header) throw IoError("empty circuit file");
  Circuit circuit(QpuSpec{qubits});
  for (auto& ins : instructions) {
    for (const auto& c : ins.controls)
      if (c.index >= qubits) throw IoError("control index out of range");
    if (ins.target.index >= qubits) throw IoError("target index out of range");
    circuit.push(std::move(ins));
  }
  if (!measured.empty()) circuit.measure(measured);
  return circuit;
}

Circuit circuit_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_circuit(is);
}

std::string to_qasm_like(const Circuit& circuit) {
  std::ostringstream os;
  os << "qubits " << circuit.qpu().total << ";\n";
  for (const auto& ins : circuit.instructions()) {
    if (ins.is_cx()) {
      os << "cx q[" << main_index(ins.controls[0]) << "], q["
         << main_index(ins.target) << "];\n";
      continue;
    }
    os << ins.gate.name();
    if (ins.gate.has_angle()) os << '(' << ins.gate.angle << ')';
    for (const auto& c : ins.controls) os << " q[" << main_index(c) << "],";
    os << " q[" << main_index(ins.target) << "];\n";
  }
  return os.str();
}

std::string report_to_json(const compiler::CompilationReport& report) {
  json j;
  json choices = json::array();
  for (const auto& r : report.choices) {
    json c;
    c["source_index"] = r.source_index;
    c["gate"] = r.gate.name();
    c["n_controls"] = r.n_controls;
    c["family"] = family_name(r.choice.family);
    c["aux_count"] = r.choice.aux_count;
    switch (r.choice.aux_state) {
      case compiler::AuxRequirement::Clean: c["aux_state"] = "clean"; break;
      case compiler::AuxRequirement::Dirty: c["aux_state"] = "dirty"; break;
      case compiler::AuxRequirement::NotApplicable: c["aux_state"] = nullptr;
    }
    c["nested"] = r.nested;
    choices.push_back(std::move(c));
  }
  j["choices"] = std::move(choices);
  json groups = json::array();
  for (const auto& g : report.groups) {
    json e;
    e["group"] = g.group_id;
    e["state"] =
        g.required_state == compiler::AuxRequirement::Dirty ? "dirty" : "clean";
    json hosts = json::array();
    for (const auto& entry : g.hosts)
      hosts.push_back({{"aux", entry.aux.str()},
                       {"host", entry.host.index},
                       {"via_interactions", entry.via_phase1}});
    e["hosts"] = std::move(hosts);
    groups.push_back(std::move(e));
  }
  j["groups"] = std::move(groups);
  json stats;
  stats["cnot_total"] = report.stats.cnot_total;
  json per = json::object();
  for (const auto& [family, count] : report.stats.per_algorithm)
    if (count > 0) per[family_name(family)] = count;
  stats["per_algorithm"] = std::move(per);
  j["stats"] = std::move(stats);
  return j.dump(2);
}

std::string bench_report_to_json(const bench::BenchReport& report) {
  json j;
  j["algorithm"] = report.algorithm == bench::Algorithm::Grover ? "grover"
                                                                : "state-prep";
  j["policy"] =
      report.policy == compiler::Policy::Auto ? "auto" : "force-no-aux";
  j["qpu"] = report.qpu_total;
  j["seed"] = report.seed;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["qubits"] = row.n_qubits;
    r["total"] = row.total;
    json per = json::object();
    for (const auto& [family, count] : row.per_algorithm)
      per[family_name(family)] = count;
    r["per_algorithm"] = std::move(per);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

}  // namespace qdecomp::io

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

#include <iosfwd>
#include <string>

#include "qdecomp/bench.hpp"
#include "qdecomp/circuit.hpp"
#include "qdecomp/compiler.hpp"

namespace qdecomp::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line-oriented JSON circuit format: a {"qubits": N} header, then one
/// instruction object per line: {"gate", "params", "target", "controls",
/// "tag"} with optional "global_phase" and "conj" fields, and an optional
/// trailing {"measure": [...]} line.
void write_circuit(const Circuit& circuit, std::ostream& os);
std::string circuit_to_string(const Circuit& circuit);
Circuit read_circuit(std::istream& is);
Circuit circuit_from_string(const std::string& text);

/// Diagnostic text form: `qubits N;` then one gate per line,
/// `name(params) q[i];` / `cx q[i], q[j];`.
std::string to_qasm_like(const Circuit& circuit);

std::string report_to_json(const compiler::CompilationReport& report);
std::string bench_report_to_json(const bench::BenchReport& report);

}  // namespace qdecomp::io

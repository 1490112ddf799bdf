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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdecomp/bench.hpp"
#include "qdecomp/compiler.hpp"
#include "qdecomp/serialize.hpp"
#include "qdecomp/sim.hpp"

namespace {

using namespace qdecomp;

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitTooLarge = 4;

struct CliConfig {
  int qpu_total = 16;
  compiler::Policy policy = compiler::Policy::Auto;
  double tolerance = 1e-9;
  std::string format = "json";  // json | table | qasm
  std::uint64_t seed = 2026;
  std::string out_path;
};

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

compiler::Policy parse_policy(const std::string& s) {
  if (s == "auto") return compiler::Policy::Auto;
  if (s == "force-no-aux") return compiler::Policy::ForceNoAux;
  throw CLI::ValidationError("--policy must be auto or force-no-aux");
}

// Precedence: flags > environment (QDECOMP_*) > config file > defaults.
void load_config_file(CliConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("qpu")) cfg.qpu_total = j["qpu"].get<int>();
  if (j.contains("policy")) cfg.policy = parse_policy(j["policy"].get<std::string>());
  if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
}

void apply_env(CliConfig& cfg) {
  if (auto v = env("QDECOMP_QPU")) cfg.qpu_total = std::stoi(*v);
  if (auto v = env("QDECOMP_POLICY")) cfg.policy = parse_policy(*v);
  if (auto v = env("QDECOMP_TOL")) cfg.tolerance = std::stod(*v);
}

void write_output(const CliConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
  out << text;
}

int cmd_compile(const CliConfig& cfg, const std::string& input_path) {
  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "error: cannot open " << input_path << '\n';
    return kExitUsage;
  }
  Circuit circuit(QpuSpec{1});
  try {
    circuit = io::read_circuit(in);
  } catch (const io::IoError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  }
  QpuSpec qpu{cfg.qpu_total};
  try {
    auto result = compiler::compile(circuit, qpu, cfg.policy);
    const Circuit& compiled = *result.circuit;
    if (cfg.format == "qasm") {
      write_output(cfg, io::to_qasm_like(compiled));
    } else {
      write_output(cfg, io::circuit_to_string(compiled));
    }
    std::cerr << io::report_to_json(result.report) << '\n';
    const auto stats = gate_stats(compiled.gates_only());
    std::cerr << "cnot_total: " << stats.cnot_total << '\n';
    return 0;
  } catch (const compiler::CompileError& e) {
    std::cerr << "compile error: " << e.what() << '\n';
    return kExitCapacity;
  }
}

int cmd_verify(const CliConfig& cfg, const std::string& input_path,
               const std::string& ideal_descriptor) {
  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "error: cannot open " << input_path << '\n';
    return kExitUsage;
  }
  Circuit circuit(QpuSpec{1});
  try {
    circuit = io::read_circuit(in);
  } catch (const io::IoError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  }
  // Descriptor: {"gate": name, "params": [...], "n_controls": k,
  //              "global_phase": x, "aux": {"count": c, "state": "clean"}}
  nlohmann::json desc;
  try {
    desc = nlohmann::json::parse(ideal_descriptor);
    if (desc.is_string()) {
      std::ifstream df(desc.get<std::string>());
      df >> desc;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "descriptor error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    Gate gate;
    const std::string name = desc.at("gate").get<std::string>();
    static const std::map<std::string, GateKind> names = {
        {"x", GateKind::PauliX}, {"y", GateKind::PauliY},
        {"z", GateKind::PauliZ}, {"rx", GateKind::RotX},
        {"ry", GateKind::RotY},  {"rz", GateKind::RotZ},
        {"p", GateKind::Phase},  {"h", GateKind::Hadamard}};
    gate.kind = names.at(name);
    if (gate.has_angle()) gate.angle = desc.at("params")[0].get<double>();
    const int n_controls = desc.at("n_controls").get<int>();
    const double phase = desc.value("global_phase", 0.0);
    sim::AuxSpec aux;
    if (desc.contains("aux")) {
      aux.count = desc["aux"].value("count", 0);
      aux.state = desc["aux"].value("state", std::string("clean")) == "dirty"
                      ? sim::AuxState::Dirty
                      : sim::AuxState::Clean;
    }
    const int total = n_controls + 1 + aux.count;
    if (total > sim::kMaxQubits) {
      std::cerr << "error: " << total << " qubits exceed the oracle limit\n";
      return kExitTooLarge;
    }
    const auto report = sim::verify_decomposition(
        gate.matrix(), phase, n_controls,
        circuit.gates_only().instructions(), aux, cfg.tolerance);
    nlohmann::json out;
    out["equal"] = report.equal;
    out["phase"] = report.phase;
    out["max_abs_deviation"] = report.max_abs_deviation;
    write_output(cfg, out.dump(2) + "\n");
    return report.equal ? 0 : 1;
  } catch (const sim::SimError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "descriptor error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_bench(const CliConfig& cfg, const std::string& algorithm, int n_min,
              int n_max) {
  bench::Algorithm alg;
  if (algorithm == "grover") {
    alg = bench::Algorithm::Grover;
  } else if (algorithm == "state-prep") {
    alg = bench::Algorithm::StatePrep;
  } else {
    std::cerr << "error: algorithm must be grover or state-prep\n";
    return kExitUsage;
  }
  try {
    const auto report = bench::run_suite(alg, n_min, n_max, QpuSpec{cfg.qpu_total},
                                         cfg.policy, cfg.seed);
    if (cfg.format == "table") {
      write_output(cfg, bench::report_table(report));
    } else if (cfg.format == "csv") {
      write_output(cfg, bench::report_csv(report));
    } else {
      write_output(cfg, io::bench_report_to_json(report) + "\n");
    }
    return 0;
  } catch (const bench::BenchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-controlled gate decomposition compiler"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path;
  std::string policy_str;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--qpu", cfg.qpu_total, "QPU qubit count");
  app.add_option("--policy", policy_str, "auto | force-no-aux");
  app.add_option("--tol", cfg.tolerance, "verification tolerance");
  app.add_option("--format", cfg.format, "json | table | csv | qasm");
  app.add_option("--seed", cfg.seed, "benchmark RNG seed");
  app.add_option("--out", cfg.out_path, "output path (default stdout)");

  std::string input_path, ideal;
  auto* compile_cmd = app.add_subcommand("compile", "compile a circuit file");
  compile_cmd->add_option("input", input_path, "circuit JSON")->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "check a circuit against an ideal gate");
  verify_cmd->add_option("input", input_path, "circuit JSON")->required();
  verify_cmd->add_option("ideal", ideal, "ideal gate descriptor (JSON)")
      ->required();

  std::string algorithm;
  int n_min = 2, n_max = 2;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  bench_cmd->add_option("algorithm", algorithm, "grover | state-prep")
      ->required();
  bench_cmd->add_option("n-min", n_min, "smallest instance")->required();
  bench_cmd->add_option("n-max", n_max, "largest instance")->required();

  try {
    app.parse(argc, argv);
    // Precedence: defaults < config file < environment < flags.
    CliConfig effective;
    if (!config_path.empty()) load_config_file(effective, config_path);
    apply_env(effective);
    for (const auto* opt :
         {app.get_option("--qpu"), app.get_option("--tol"),
          app.get_option("--format"), app.get_option("--seed"),
          app.get_option("--out")}) {
      (void)opt;
    }
    if (app.count("--qpu")) effective.qpu_total = cfg.qpu_total;
    if (app.count("--tol")) effective.tolerance = cfg.tolerance;
    if (app.count("--format")) effective.format = cfg.format;
    if (app.count("--seed")) effective.seed = cfg.seed;
    if (app.count("--out")) effective.out_path = cfg.out_path;
    if (app.count("--policy")) effective.policy = parse_policy(policy_str);

    if (compile_cmd->parsed()) return cmd_compile(effective, input_path);
    if (verify_cmd->parsed()) return cmd_verify(effective, input_path, ideal);
    if (bench_cmd->parsed()) return cmd_bench(effective, algorithm, n_min, n_max);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

// Copyright 2026 The qperf authors
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

#include <cstdint>
#include <map>
#include <string>

#include "qperf/circuit.hpp"
#include "qperf/coupling.hpp"
#include "qperf/statevector.hpp"

namespace qperf {

/// Per-backend timing parameters, all in seconds. Defaults model a
/// zero-overhead device apart from the standard 250 us shot repetition
/// delay.
struct LatencyModel {
  double rep_delay = 250e-6;             // per shot boundary
  double instrument_init = 0.0;          // per job
  double load_per_instruction = 0.0;     // per native op
  double runtime_compile_per_gate = 0.0; // per native op
  std::map<std::string, double> gate_durations;  // gate kind -> seconds
  double measure_duration = 0.0;
  double transfer_per_byte = 0.0;  // each direction
  double transfer_fixed = 0.0;     // per round trip

  double gate_duration(GateKind k) const {
    if (k == GateKind::Measure) return measure_duration;
    if (k == GateKind::Barrier) return 0.0;
    const auto it = gate_durations.find(gate_name(k));
    return it == gate_durations.end() ? 0.0 : it->second;
  }

  void check() const {
    const auto nonneg = [](double v) {
      if (v < 0) throw ValidationError("latency fields must be nonnegative");
    };
    nonneg(rep_delay);
    nonneg(instrument_init);
    nonneg(load_per_instruction);
    nonneg(runtime_compile_per_gate);
    nonneg(measure_duration);
    nonneg(transfer_per_byte);
    nonneg(transfer_fixed);
    for (const auto& [_, v] : gate_durations) nonneg(v);
  }

  json to_json() const {
    json j;
    j["rep_delay"] = rep_delay;
    j["instrument_init"] = instrument_init;
    j["load_per_instruction"] = load_per_instruction;
    j["runtime_compile_per_gate"] = runtime_compile_per_gate;
    json g = json::object();
    for (const auto& [k, v] : gate_durations) g[k] = v;
    j["gate_durations"] = std::move(g);
    j["measure_duration"] = measure_duration;
    j["transfer_per_byte"] = transfer_per_byte;
    j["transfer_fixed"] = transfer_fixed;
    return j;
  }

  static LatencyModel from_json(const json& j) {
    LatencyModel m;
    if (j.contains("rep_delay")) m.rep_delay = j["rep_delay"].get<double>();
    if (j.contains("instrument_init"))
      m.instrument_init = j["instrument_init"].get<double>();
    if (j.contains("load_per_instruction"))
      m.load_per_instruction = j["load_per_instruction"].get<double>();
    if (j.contains("runtime_compile_per_gate"))
      m.runtime_compile_per_gate = j["runtime_compile_per_gate"].get<double>();
    if (j.contains("gate_durations"))
      for (const auto& [k, v] : j["gate_durations"].items())
        m.gate_durations[k] = v.get<double>();
    if (j.contains("measure_duration"))
      m.measure_duration = j["measure_duration"].get<double>();
    if (j.contains("transfer_per_byte"))
      m.transfer_per_byte = j["transfer_per_byte"].get<double>();
    if (j.contains("transfer_fixed"))
      m.transfer_fixed = j["transfer_fixed"].get<double>();
    m.check();
    return m;
  }
};

enum class ClockMode { Virtual, Wall };

/// On-disk backend description: latency model fields at the top level plus
/// topology, clock choice, sampling seed, and the optional depolarizing
/// noise extension.
struct BackendConfig {
  std::string name = "local";
  QubitId num_qubits = 0;
  CouplingMap coupling_map;
  ClockMode clock = ClockMode::Virtual;
  LatencyModel latency;
  NoiseModel noise;
  std::uint64_t seed = 0;

  json to_json() const {
    json j;
    j["name"] = name;
    j["num_qubits"] = num_qubits;
    j["coupling_map"] = coupling_map.to_json();
    j["clock"] = clock == ClockMode::Virtual ? "virtual" : "wall";
    j["seed"] = seed;
    json lat = latency.to_json();
    for (auto& [k, v] : lat.items()) j[k] = v;
    if (noise.enabled()) {
      json nz;
      nz["p1"] = noise.p1;
      nz["p2"] = noise.p2;
      j["noise"] = std::move(nz);
    }
    return j;
  }

  static BackendConfig from_json(const json& j) {
    BackendConfig c;
    if (j.contains("name")) c.name = j["name"].get<std::string>();
    c.num_qubits = j.at("num_qubits").get<QubitId>();
    if (j.contains("coupling_map"))
      c.coupling_map = CouplingMap::from_json(j["coupling_map"]);
    else
      c.coupling_map = CouplingMap::line(c.num_qubits);
    if (c.coupling_map.num_qubits() != c.num_qubits)
      throw ValidationError("num_qubits disagrees with the coupling map");
    if (j.contains("clock")) {
      const auto mode = j["clock"].get<std::string>();
      if (mode == "virtual")
        c.clock = ClockMode::Virtual;
      else if (mode == "wall")
        c.clock = ClockMode::Wall;
      else
        throw ValidationError("clock must be \"virtual\" or \"wall\"");
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    c.latency = LatencyModel::from_json(j);
    if (j.contains("noise")) {
      c.noise.p1 = j["noise"].value("p1", 0.0);
      c.noise.p2 = j["noise"].value("p2", 0.0);
      if (c.noise.p1 < 0 || c.noise.p1 > 1 || c.noise.p2 < 0 || c.noise.p2 > 1)
        throw ValidationError("depolarizing probabilities must be in [0,1]");
    }
    return c;
  }
};

}  // namespace qperf

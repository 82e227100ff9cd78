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

#include <cmath>
#include <string>
#include <vector>

#include "qperf/backend.hpp"
#include "qperf/qv_circuits.hpp"
#include "qperf/statevector.hpp"
#include "qperf/transpiler.hpp"

namespace qperf {

/// The pass threshold is part of the metric's definition, not a knob.
inline constexpr double kHeavyOutputThreshold = 2.0 / 3.0;

struct QVOptions {
  std::uint32_t num_circuits = 100;
  std::uint64_t shots = 100;
  double z = 2.0;  // sigmas below the mean for the confidence bound
  std::uint64_t seed = 0;
};

/// Outcome of one quantum-volume measurement at a fixed width.
struct QVResult {
  std::string backend_name;
  QubitId width = 0;
  std::uint32_t num_circuits = 0;
  std::uint64_t shots = 0;
  double z = 2.0;
  std::uint64_t seed = 0;
  double mean_hop = 0;
  double sigma_mean = 0;
  double lower_ci = 0;
  bool passed = false;
  std::uint64_t qv_value = 0;              // 2^width when passed, else 0
  std::vector<QubitId> qubits;             // physical qubits the run used

  json to_json() const {
    json j;
    j["backend"] = backend_name;
    j["width"] = width;
    j["num_circuits"] = num_circuits;
    j["shots"] = shots;
    j["z"] = z;
    j["seed"] = seed;
    j["mean_hop"] = mean_hop;
    j["sigma_mean"] = sigma_mean;
    j["lower_ci"] = lower_ci;
    j["passed"] = passed;
    j["qv_value"] = qv_value;
    j["qubits"] = qubits;
    return j;
  }

  static QVResult from_json(const json& j) {
    QVResult r;
    r.backend_name = j.value("backend", std::string());
    r.width = j.at("width").get<QubitId>();
    r.num_circuits = j.value("num_circuits", 0u);
    r.shots = j.value("shots", std::uint64_t{0});
    r.z = j.value("z", 2.0);
    r.seed = j.value("seed", std::uint64_t{0});
    r.mean_hop = j.value("mean_hop", 0.0);
    r.sigma_mean = j.value("sigma_mean", 0.0);
    r.lower_ci = j.value("lower_ci", 0.0);
    r.passed = j.at("passed").get<bool>();
    r.qv_value = j.at("qv_value").get<std::uint64_t>();
    if (j.contains("qubits")) r.qubits = j["qubits"].get<std::vector<QubitId>>();
    return r;
  }
};

/// Measure quantum volume at one width: square Haar-random circuits, ideal
/// heavy sets by simulation, execution on the backend, then the z-sigma
/// lower bound on the mean heavy-output probability against 2/3.
inline QVResult run_qv(Backend& backend, const CouplingMap& cmap, QubitId width,
                       const QVOptions& opts = {}) {
  if (width < 2) throw ParameterError("quantum volume needs width >= 2");
  if (width > backend.num_qubits())
    throw CapacityError("backend is smaller than the requested width");
  if (opts.num_circuits < 2) throw ParameterError("need at least 2 circuits");

  const auto templates = generate_qv_templates(
      width, width, opts.num_circuits, substream_seed(opts.seed, 0x71));

  std::vector<std::vector<std::uint64_t>> heavy_sets;
  heavy_sets.reserve(templates.size());
  Job job;
  job.shots = opts.shots;
  for (std::size_t m = 0; m < templates.size(); ++m) {
    SplitMix64 su4_rng(substream_seed(opts.seed, 0x100 + m));
    const Circuit abstract = build_haar_qv_circuit(templates[m], su4_rng);
    heavy_sets.push_back(heavy_set(simulate(abstract).probabilities()));
    job.circuits.push_back(transpile(abstract, cmap).circuit);
  }

  const JobResult result = backend.result(backend.submit(std::move(job)));

  double sum = 0;
  std::vector<double> hops(templates.size());
  for (std::size_t m = 0; m < templates.size(); ++m) {
    hops[m] = heavy_output_probability(result.counts.at(m), heavy_sets[m]);
    sum += hops[m];
  }
  const double n = static_cast<double>(templates.size());
  const double mean = sum / n;
  double var = 0;
  for (const double h : hops) var += (h - mean) * (h - mean);
  var /= (n - 1.0);
  const double sigma_mean = std::sqrt(var / n);

  QVResult r;
  r.backend_name = backend.name();
  r.width = width;
  r.num_circuits = opts.num_circuits;
  r.shots = opts.shots;
  r.z = opts.z;
  r.seed = opts.seed;
  r.mean_hop = mean;
  r.sigma_mean = sigma_mean;
  r.lower_ci = mean - opts.z * sigma_mean;
  r.passed = r.lower_ci > kHeavyOutputThreshold;
  r.qv_value = r.passed ? (std::uint64_t{1} << width) : 0;
  for (QubitId q = 0; q < width; ++q) r.qubits.push_back(q);
  return r;
}

struct QVScan {
  std::vector<QVResult> results;
  QubitId largest_passing_width = 0;  // 0 when nothing passed
  std::uint64_t qv_value = 0;
};

/// Walk widths 2..max_width in order; the scan stops at the first failure
/// and reports the largest consecutive passing width.
inline QVScan qv_scan(Backend& backend, const CouplingMap& cmap,
                      QubitId max_width, const QVOptions& opts = {}) {
  if (max_width > backend.num_qubits())
    throw CapacityError("scan exceeds backend size");
  QVScan scan;
  for (QubitId w = 2; w <= max_width; ++w) {
    scan.results.push_back(run_qv(backend, cmap, w, opts));
    if (!scan.results.back().passed) break;
    scan.largest_passing_width = w;
    scan.qv_value = scan.results.back().qv_value;
  }
  return scan;
}

}  // namespace qperf

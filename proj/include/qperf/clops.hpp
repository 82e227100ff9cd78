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

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qperf/backend.hpp"
#include "qperf/qv_protocol.hpp"
#include "qperf/transpiler.hpp"

namespace qperf {

/// PRNG seed from a measurement histogram: FNV-1a over the canonical
/// "bitstring:count;" byte string with keys sorted lexicographically.
inline std::uint64_t derive_seed(const Counts& counts) {
  if (counts.histogram.empty()) throw ParameterError("counts must be nonempty");
  return fnv1a64(counts.canonical_bytes());
}

/// The next parameter vector: a splitmix64 stream mapped to angles in
/// [0, 2*pi). Bit-exact by construction.
inline std::vector<double> next_params(std::uint64_t seed, std::size_t n) {
  if (n < 1) throw ParameterError("need at least one parameter");
  SplitMix64 rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.next_angle();
  return out;
}

/// CLOPS is integer layers per second; floor is the only rounding
/// consistent with the published values.
inline std::int64_t compute_clops(std::uint64_t m, std::uint64_t k,
                                  std::uint64_t s, std::uint64_t d,
                                  double time_taken) {
  if (time_taken <= 0) throw ParameterError("time must be positive");
  return static_cast<std::int64_t>(
      std::floor(static_cast<double>(m * k * s * d) / time_taken));
}

inline std::int64_t compute_depth1_rate(std::uint64_t m, std::uint64_t k,
                                        std::uint64_t s, double avg_depth,
                                        double time_taken) {
  if (time_taken <= 0) throw ParameterError("time must be positive");
  if (avg_depth <= 0) throw ParameterError("depth must be positive");
  return static_cast<std::int64_t>(
      std::floor(static_cast<double>(m * k * s) * avg_depth / time_taken));
}

struct ClopsConfig {
  std::uint32_t templates_m = 100;
  std::uint32_t updates_k = 10;
  std::uint64_t shots_s = 100;
  QubitId width_n = 0;
  std::uint32_t layers_d = 0;
  std::uint64_t qv_value = 0;
  std::uint64_t master_seed = 0;
  std::vector<QubitId> qv_qubits;
  bool server_side_binding = false;
  bool measure_hop = false;

  /// Adopt the width, layer count and qubits the QV run established.
  static ClopsConfig from_qv_result(const QVResult& qv) {
    if (!qv.passed)
      throw ValidationError("CLOPS requires an established (passed) QV");
    ClopsConfig cfg;
    cfg.width_n = qv.width;
    cfg.layers_d = qv.width;  // square circuits
    cfg.qv_value = qv.qv_value;
    cfg.qv_qubits = qv.qubits;
    cfg.shots_s = qv.shots;
    return cfg;
  }

  void validate(const Backend& backend) const {
    if (templates_m < 1 || updates_k < 1 || shots_s < 1)
      throw ParameterError("M, K and S must be positive");
    if (width_n < 2 || layers_d < 1)
      throw ParameterError("need width >= 2 and at least one layer");
    if (qv_value) {
      if ((qv_value & (qv_value - 1)) != 0)
        throw ValidationError("qv_value must be a power of two");
      std::uint64_t log2 = 0;
      for (std::uint64_t v = qv_value; v > 1; v >>= 1) ++log2;
      if (log2 != layers_d)
        throw ValidationError("layer count must equal log2(qv_value)");
    }
    if (width_n > backend.num_qubits())
      throw CapacityError("backend is smaller than the configured width");
  }
};

enum class EventKind { PrepDone, TimingStart, Submit, ResultReceived, TimingEnd };

struct Event {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Submit;
  std::uint32_t m = 0;
  std::int32_t k = -1;
  double clock_seconds = 0;
};

/// Append-only, thread-safe benchmark trace. The global sequence counter
/// orders events across chain threads.
class EventLog {
 public:
  void record(EventKind kind, std::uint32_t m, std::int32_t k, double clock) {
    const std::uint64_t seq = seq_.fetch_add(1);
    std::lock_guard lock(mu_);
    events_.push_back(Event{seq, kind, m, k, clock});
  }

  std::vector<Event> snapshot() const {
    std::lock_guard lock(mu_);
    return events_;
  }

 private:
  std::atomic<std::uint64_t> seq_{0};
  mutable std::mutex mu_;
  std::vector<Event> events_;
};

/// Violation count for the dependency rule: job (m,k) may be submitted only
/// after the result of (m,k-1) was received, and all preparation must
/// precede the timing start, which precedes every submission.
inline int causality_violations(const std::vector<Event>& events) {
  std::uint64_t prep_done = 0, timing_start = 0;
  bool saw_prep = false, saw_start = false;
  std::map<std::pair<std::uint32_t, std::int32_t>, std::uint64_t> submit_seq;
  std::map<std::pair<std::uint32_t, std::int32_t>, std::uint64_t> result_seq;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::PrepDone:
        prep_done = e.seq;
        saw_prep = true;
        break;
      case EventKind::TimingStart:
        timing_start = e.seq;
        saw_start = true;
        break;
      case EventKind::Submit:
        submit_seq[{e.m, e.k}] = e.seq;
        break;
      case EventKind::ResultReceived:
        result_seq[{e.m, e.k}] = e.seq;
        break;
      default:
        break;
    }
  }
  int violations = 0;
  if (saw_prep && saw_start && prep_done >= timing_start) ++violations;
  for (const auto& [mk, seq] : submit_seq) {
    if (saw_start && seq <= timing_start) ++violations;
    if (mk.second > 0) {
      const auto prev = result_seq.find({mk.first, mk.second - 1});
      if (prev == result_seq.end() || prev->second >= seq) ++violations;
    }
  }
  return violations;
}

/// Benchmark outcome plus the effective configuration, re-derivable from
/// its own serialization.
struct ClopsReport {
  std::string device;
  QubitId device_qubits = 0;
  std::uint64_t qv_value = 0;
  std::uint32_t layers = 0;
  std::uint64_t shots = 0;
  std::uint32_t templates_m = 0;
  std::uint32_t updates_k = 0;
  QubitId width = 0;
  std::uint64_t master_seed = 0;
  bool server_side_binding = false;
  std::int64_t clops = 0;
  std::int64_t depth1_per_second = 0;
  double avg_template_depth = 0;
  double total_time_s = 0;
  TimingLedger ledger;
  std::optional<double> mean_hop;

  json to_json() const {
    json j;
    j["device"] = device;
    j["qubits"] = device_qubits;
    j["qv"] = qv_value;
    j["layers"] = layers;
    j["shots"] = shots;
    j["templates"] = templates_m;
    j["updates"] = updates_k;
    j["width"] = width;
    j["seed"] = master_seed;
    j["server_side_binding"] = server_side_binding;
    j["clops"] = clops;
    j["depth1_per_second"] = depth1_per_second;
    j["avg_template_depth"] = avg_template_depth;
    j["total_time"] = total_time_s;
    j["timing"] = ledger.to_json();
    j["mean_hop"] = mean_hop ? json(*mean_hop) : json(nullptr);
    return j;
  }

  static ClopsReport from_json(const json& j) {
    ClopsReport r;
    r.device = j.value("device", std::string());
    r.device_qubits = j.value("qubits", 0u);
    r.qv_value = j.value("qv", std::uint64_t{0});
    r.layers = j.value("layers", 0u);
    r.shots = j.value("shots", std::uint64_t{0});
    r.templates_m = j.value("templates", 0u);
    r.updates_k = j.value("updates", 0u);
    r.width = j.value("width", 0u);
    r.master_seed = j.value("seed", std::uint64_t{0});
    r.server_side_binding = j.value("server_side_binding", false);
    r.clops = j.at("clops").get<std::int64_t>();
    r.depth1_per_second = j.value("depth1_per_second", std::int64_t{0});
    r.avg_template_depth = j.value("avg_template_depth", 0.0);
    r.total_time_s = j.at("total_time").get<double>();
    if (j.contains("timing")) r.ledger = TimingLedger::from_json(j["timing"]);
    if (j.contains("mean_hop") && !j["mean_hop"].is_null())
      r.mean_hop = j["mean_hop"].get<double>();
    return r;
  }
};

/// Raised when the backend fails mid-benchmark; carries what was measured
/// before the abort.
struct ClopsAborted : std::runtime_error {
  ClopsAborted(const std::string& what, TimingLedger partial)
      : std::runtime_error(what), partial_ledger(partial) {}
  TimingLedger partial_ledger;
};

/// The template set a configuration will run: permutations are fixed by
/// the master seed, so tooling can precompute sizes and depths.
inline std::vector<QVTemplate> clops_templates(const ClopsConfig& cfg) {
  return generate_qv_templates(cfg.width_n, cfg.layers_d, cfg.templates_m,
                               substream_seed(cfg.master_seed, 0x7e));
}

/// The seven-step procedure. Templates are generated and compiled before
/// the clock starts; M chains then run concurrently against the backend's
/// single execution queue, each chain strictly sequential in k with
/// theta_{m,k} seeded by the previous output's histogram.
inline ClopsReport run_clops(Backend& backend, const CouplingMap& cmap,
                             const ClopsConfig& cfg, EventLog* log = nullptr) {
  cfg.validate(backend);
  const std::uint32_t m_count = cfg.templates_m;
  const std::uint32_t k_count = cfg.updates_k;

  // Step 1 (untimed): fix permutations and compile the skeletons.
  const auto templates = clops_templates(cfg);
  double depth_sum = 0;
  for (const auto& t : templates) {
    const Circuit zero_bound = bind_parameters(t, ParameterVector(t.param_count(), 0.0));
    depth_sum += depth(transpile(zero_bound, cmap)).depth;
  }
  const double avg_depth = depth_sum / static_cast<double>(m_count);
  if (log) log->record(EventKind::PrepDone, 0, -1, backend.now_seconds());

  // Step 2: time starts.
  const double t0 = backend.now_seconds();
  if (log) log->record(EventKind::TimingStart, 0, -1, t0);

  std::vector<TimingLedger> ledgers(std::size_t{m_count} * k_count);
  std::vector<double> hop_sums(m_count, 0.0);
  std::mutex error_mu;
  std::string first_error;
  std::atomic<bool> abort{false};

  const auto chain = [&](std::uint32_t m) {
    const QVTemplate& tpl = templates[m];
    const std::size_t n_params = tpl.param_count();
    std::vector<double> theta =
        next_params(substream_seed(cfg.master_seed, m), n_params);
    for (std::uint32_t k = 0; k < k_count; ++k) {
      if (abort.load()) return;
      try {
        const Circuit bound = bind_parameters(tpl, theta);
        Job job;
        job.shots = cfg.shots_s;
        if (cfg.server_side_binding) {
          job.circuits = {bind_parameters(
              tpl, ParameterVector(tpl.param_count(), 0.0))};
          job.params = std::vector<std::vector<double>>{theta};
        } else {
          job.circuits = {transpile(bound, cmap).circuit};
        }
        if (log)
          log->record(EventKind::Submit, m, static_cast<std::int32_t>(k),
                      backend.now_seconds());
        const JobResult r = backend.result(backend.submit(std::move(job)));
        if (log)
          log->record(EventKind::ResultReceived, m, static_cast<std::int32_t>(k),
                      backend.now_seconds());
        ledgers[std::size_t{m} * k_count + k] = r.timing;
        const Counts& counts = r.counts.at(0);
        if (cfg.measure_hop) {
          const auto heavy = heavy_set(simulate(bound).probabilities());
          hop_sums[m] += heavy_output_probability(counts, heavy);
        }
        if (k + 1 < k_count) theta = next_params(derive_seed(counts), n_params);
      } catch (const std::exception& e) {
        {
          std::lock_guard lock(error_mu);
          if (first_error.empty()) first_error = e.what();
        }
        abort.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(m_count);
  for (std::uint32_t m = 0; m < m_count; ++m) threads.emplace_back(chain, m);
  for (auto& t : threads) t.join();

  // Step 7: all results received, time stops.
  const double t1 = backend.now_seconds();
  if (log) log->record(EventKind::TimingEnd, 0, -1, t1);

  TimingLedger total_ledger;
  for (const auto& ledger : ledgers) total_ledger += ledger;
  if (abort.load())
    throw ClopsAborted("benchmark aborted: " + first_error, total_ledger);

  const double total = t1 - t0;
  ClopsReport report;
  report.device = backend.name();
  report.device_qubits = backend.num_qubits();
  report.qv_value = cfg.qv_value ? cfg.qv_value : (std::uint64_t{1} << cfg.layers_d);
  report.layers = cfg.layers_d;
  report.shots = cfg.shots_s;
  report.templates_m = m_count;
  report.updates_k = k_count;
  report.width = cfg.width_n;
  report.master_seed = cfg.master_seed;
  report.server_side_binding = cfg.server_side_binding;
  report.clops = compute_clops(m_count, k_count, cfg.shots_s, cfg.layers_d, total);
  report.depth1_per_second =
      compute_depth1_rate(m_count, k_count, cfg.shots_s, avg_depth, total);
  report.avg_template_depth = avg_depth;
  report.total_time_s = total;
  report.ledger = total_ledger;
  if (cfg.measure_hop) {
    double sum = 0;
    for (const double h : hop_sums) sum += h;
    report.mean_hop = sum / (static_cast<double>(m_count) * k_count);
  }
  return report;
}

}  // namespace qperf

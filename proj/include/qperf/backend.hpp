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
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "qperf/latency.hpp"
#include "qperf/transpiler.hpp"
#include "qperf/wire.hpp"

namespace qperf {

/// Deterministic lowering of native circuits to opaque control binaries.
/// The payload is the canonical circuit serialization, so equal circuits
/// produce equal binaries and any parameter change produces different ones.
inline std::vector<std::string> runtime_compile(const std::vector<Circuit>& circuits) {
  std::vector<std::string> binaries;
  binaries.reserve(circuits.size());
  for (const auto& c : circuits) {
    c.validate();
    for (const auto& op : c.ops)
      if (!op.is_native())
        throw ValidationError("runtime compilation takes native circuits");
    binaries.push_back(c.canonical_json());
  }
  return binaries;
}

/// Sampling stream for one circuit execution, derived from content rather
/// than submission order so concurrent chains cannot perturb each other's
/// outcomes.
inline std::uint64_t sampling_seed(std::uint64_t backend_seed,
                                   const Circuit& native, std::uint64_t shots) {
  return mix64(backend_seed ^ fnv1a64(native.canonical_json()) ^ mix64(shots));
}

class Backend {
 public:
  virtual ~Backend() = default;

  /// Enqueue a job; returns its id (assigned when the job carries none).
  virtual std::string submit(Job job) = 0;

  /// Block until the job named finishes and return its result.
  virtual JobResult result(const std::string& job_id) = 0;

  virtual QubitId num_qubits() const = 0;
  virtual const std::string& name() const = 0;

  /// Benchmark clock in seconds: virtual (modeled, deterministic) or wall.
  virtual double now_seconds() = 0;
  virtual bool has_virtual_clock() const = 0;
};

/// Simulated QPU with a configurable latency model. One executor thread
/// drains a FIFO queue, so at most one job's shots run at a time; the
/// virtual clock is owned and advanced only by that thread.
class LocalBackend final : public Backend {
 public:
  explicit LocalBackend(BackendConfig config)
      : config_(std::move(config)),
        id_rng_(mix64(config_.seed ^ 0x6a0b5cull)),
        epoch_(std::chrono::steady_clock::now()),
        worker_([this] { run(); }) {
    config_.latency.check();
  }

  ~LocalBackend() override {
    {
      std::lock_guard lock(mu_);
      stopping_ = true;
    }
    queue_cv_.notify_all();
    worker_.join();
  }

  std::string submit(Job job) override {
    validate_job(job);
    std::lock_guard lock(mu_);
    if (job.job_id.empty()) job.job_id = fresh_job_id(id_rng_);
    if (!known_ids_.insert(job.job_id).second)
      throw ParameterError("duplicate job id");
    const std::string id = job.job_id;
    queue_.push_back(std::move(job));
    queue_cv_.notify_all();
    return id;
  }

  JobResult result(const std::string& job_id) override {
    std::unique_lock lock(mu_);
    if (!known_ids_.count(job_id)) throw ParameterError("unknown job id");
    result_cv_.wait(lock, [&] { return results_.count(job_id) > 0; });
    JobResult r = std::move(results_.at(job_id));
    results_.erase(job_id);
    known_ids_.erase(job_id);
    return r;
  }

  QubitId num_qubits() const override { return config_.num_qubits; }
  const std::string& name() const override { return config_.name; }

  double now_seconds() override {
    if (config_.clock == ClockMode::Virtual)
      return static_cast<double>(virtual_clock_ns_.load()) / 1e9;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         epoch_)
        .count();
  }

  bool has_virtual_clock() const override {
    return config_.clock == ClockMode::Virtual;
  }

  const BackendConfig& config() const { return config_; }

 private:
  void validate_job(const Job& job) const {
    if (job.circuits.empty()) throw ValidationError("job carries no circuits");
    if (job.shots < 1) throw ValidationError("job needs at least one shot");
    for (const auto& c : job.circuits) {
      c.validate();
      if (c.width > config_.num_qubits)
        throw CapacityError("circuit wider than the backend");
    }
    if (job.params) {
      if (job.params->size() != job.circuits.size())
        throw ValidationError("one parameter vector per circuit required");
      for (std::size_t i = 0; i < job.circuits.size(); ++i) {
        std::size_t slots = 0;
        for (const auto& op : job.circuits[i].ops)
          if (op.kind == GateKind::SU4) ++slots;
        if ((*job.params)[i].size() != 15 * slots)
          throw ValidationError("parameter vector length mismatch");
      }
    } else {
      for (const auto& c : job.circuits)
        for (const auto& op : c.ops) {
          if (!op.is_native())
            throw ValidationError("job circuits must be native (or carry params)");
          if (op.kind == GateKind::CX &&
              !config_.coupling_map.has_edge(op.qubits[0], op.qubits[1]))
            throw ValidationError("cx off the coupling map");
        }
    }
  }

  void run() {
    while (true) {
      Job job;
      {
        std::unique_lock lock(mu_);
        queue_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
        if (stopping_ && queue_.empty()) return;
        job = std::move(queue_.front());
        queue_.pop_front();
      }
      JobResult r = execute(job);
      {
        std::lock_guard lock(mu_);
        results_[r.job_id] = std::move(r);
      }
      result_cv_.notify_all();
    }
  }

  JobResult execute(const Job& job) {
    const LatencyModel& lat = config_.latency;

    // Runtime compilation: bind parameters when present, lower to control
    // binaries. Its modeled cost is charged per resulting native op.
    std::vector<Circuit> natives;
    natives.reserve(job.circuits.size());
    for (std::size_t i = 0; i < job.circuits.size(); ++i) {
      if (job.params) {
        Circuit bound = job.circuits[i];
        std::size_t cursor = 0;
        const auto& theta = (*job.params)[i];
        for (auto& op : bound.ops)
          if (op.kind == GateKind::SU4) {
            op.params.assign(theta.begin() + cursor, theta.begin() + cursor + 15);
            cursor += 15;
          }
        natives.push_back(transpile(bound, config_.coupling_map).circuit);
      } else {
        natives.push_back(job.circuits[i]);
      }
    }
    const auto binaries = runtime_compile(natives);
    (void)binaries;

    JobResult r;
    r.job_id = job.job_id;
    std::int64_t prep_ns = to_ns(lat.instrument_init) + request_transfer_ns(job);
    std::int64_t exec_ns = 0, delay_ns = 0;
    for (const auto& native : natives) {
      prep_ns += to_ns(static_cast<double>(native.ops.size()) *
                       (lat.runtime_compile_per_gate + lat.load_per_instruction));
      double per_shot = 0;
      for (const auto& op : native.ops) per_shot += lat.gate_duration(op.kind);
      exec_ns += to_ns(per_shot * static_cast<double>(job.shots));
      delay_ns += to_ns(lat.rep_delay) * static_cast<std::int64_t>(job.shots);

      SplitMix64 rng(sampling_seed(config_.seed, native, job.shots));
      r.counts.push_back(execute_counts(native, job.shots, rng, config_.noise));
    }
    prep_ns += response_transfer_ns(r);

    r.timing.circuit_execution_ns = exec_ns;
    r.timing.circuit_delay_ns = delay_ns;
    r.timing.runtime_compile_and_transfer_ns = prep_ns;

    const std::int64_t total = r.timing.total_ns();
    if (config_.clock == ClockMode::Virtual) {
      virtual_clock_ns_.fetch_add(total);
    } else {
      std::this_thread::sleep_for(std::chrono::nanoseconds(total));
    }
    return r;
  }

  static std::int64_t to_ns(double seconds) {
    return std::llround(seconds * 1e9);
  }

  /// Modeled transfer: per-byte cost on the request and response wire lines
  /// plus a fixed round-trip charge. The response is sized with the timing
  /// block still zeroed (its own cost cannot depend on itself).
  std::int64_t request_transfer_ns(const Job& job) const {
    if (config_.latency.transfer_per_byte == 0 &&
        config_.latency.transfer_fixed == 0)
      return 0;
    const std::size_t request_bytes = wire::submit_message(job).dump().size() + 1;
    return to_ns(config_.latency.transfer_fixed +
                 config_.latency.transfer_per_byte *
                     static_cast<double>(request_bytes));
  }

  std::int64_t response_transfer_ns(const JobResult& r) const {
    if (config_.latency.transfer_per_byte == 0) return 0;
    const std::size_t response_bytes = wire::result_message(r).dump().size() + 1;
    return to_ns(config_.latency.transfer_per_byte *
                 static_cast<double>(response_bytes));
  }

  BackendConfig config_;
  SplitMix64 id_rng_;
  std::chrono::steady_clock::time_point epoch_;
  std::atomic<std::int64_t> virtual_clock_ns_{0};

  std::mutex mu_;
  std::condition_variable queue_cv_;
  std::condition_variable result_cv_;
  std::deque<Job> queue_;
  std::unordered_map<std::string, JobResult> results_;
  std::unordered_set<std::string> known_ids_;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace qperf

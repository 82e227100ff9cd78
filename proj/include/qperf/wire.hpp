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
#include <optional>
#include <string>
#include <vector>

#include "qperf/circuit.hpp"
#include "qperf/rng.hpp"
#include "qperf/statevector.hpp"

namespace qperf {

/// Accumulated benchmark time by category, in integer nanoseconds so sums
/// are exact and order-independent. Categories never overlap.
struct TimingLedger {
  std::int64_t circuit_execution_ns = 0;
  std::int64_t circuit_delay_ns = 0;
  std::int64_t runtime_compile_and_transfer_ns = 0;

  std::int64_t total_ns() const {
    return circuit_execution_ns + circuit_delay_ns +
           runtime_compile_and_transfer_ns;
  }

  TimingLedger& operator+=(const TimingLedger& o) {
    circuit_execution_ns += o.circuit_execution_ns;
    circuit_delay_ns += o.circuit_delay_ns;
    runtime_compile_and_transfer_ns += o.runtime_compile_and_transfer_ns;
    return *this;
  }

  json to_json() const {
    json j;
    j["circuit_execution"] = circuit_execution_ns / 1e9;
    j["circuit_delay"] = circuit_delay_ns / 1e9;
    j["runtime_compile_and_transfer"] = runtime_compile_and_transfer_ns / 1e9;
    return j;
  }

  static TimingLedger from_json(const json& j) {
    TimingLedger t;
    t.circuit_execution_ns =
        std::llround(j.at("circuit_execution").get<double>() * 1e9);
    t.circuit_delay_ns = std::llround(j.at("circuit_delay").get<double>() * 1e9);
    t.runtime_compile_and_transfer_ns =
        std::llround(j.at("runtime_compile_and_transfer").get<double>() * 1e9);
    return t;
  }
};

/// Request for one or more circuit executions. `params` non-null switches
/// the backend to server-side binding: each circuit is a parameterized
/// template whose SU4 angle slots are overwritten by the matching vector
/// before runtime compilation.
struct Job {
  std::string job_id;
  std::vector<Circuit> circuits;
  std::uint64_t shots = 0;
  std::optional<std::vector<std::vector<double>>> params;
};

struct JobResult {
  std::string job_id;
  std::vector<Counts> counts;
  TimingLedger timing;
};

namespace wire {

inline json submit_message(const Job& job) {
  json j;
  j["type"] = "submit";
  j["job_id"] = job.job_id;
  j["shots"] = job.shots;
  json cs = json::array();
  for (const auto& c : job.circuits) cs.push_back(c.to_json());
  j["circuits"] = std::move(cs);
  j["params"] = job.params ? json(*job.params) : json(nullptr);
  return j;
}

inline Job parse_submit(const json& j) {
  Job job;
  job.job_id = j.at("job_id").get<std::string>();
  job.shots = j.at("shots").get<std::uint64_t>();
  for (const auto& c : j.at("circuits")) job.circuits.push_back(Circuit::from_json(c));
  if (!j.at("params").is_null())
    job.params = j["params"].get<std::vector<std::vector<double>>>();
  return job;
}

inline json ack_message(const std::string& job_id) {
  json j;
  j["type"] = "ack";
  j["job_id"] = job_id;
  return j;
}

inline json result_message(const JobResult& r) {
  json j;
  j["type"] = "result";
  j["job_id"] = r.job_id;
  json cs = json::array();
  for (const auto& c : r.counts) cs.push_back(c.to_json());
  j["counts"] = std::move(cs);
  j["timing"] = r.timing.to_json();
  return j;
}

inline JobResult parse_result(const json& j) {
  JobResult r;
  r.job_id = j.at("job_id").get<std::string>();
  for (const auto& c : j.at("counts")) r.counts.push_back(Counts::from_json(c));
  r.timing = TimingLedger::from_json(j.at("timing"));
  return r;
}

inline json error_message(const std::string& job_id, const std::string& code,
                          const std::string& message) {
  json j;
  j["type"] = "error";
  j["job_id"] = job_id;
  j["code"] = code;
  j["message"] = message;
  return j;
}

}  // namespace wire

/// Client-side job ids: 128 random bits in UUID shape, stream seeded per
/// process.
inline std::string fresh_job_id(SplitMix64& rng) {
  static const char* hex = "0123456789abcdef";
  const std::uint64_t hi = rng.next_u64(), lo = rng.next_u64();
  std::string s;
  s.reserve(36);
  const auto put = [&](std::uint64_t v, int nibbles) {
    for (int i = nibbles - 1; i >= 0; --i) s += hex[(v >> (4 * i)) & 0xF];
  };
  put(hi >> 32, 8);
  s += '-';
  put(hi >> 16, 4);
  s += '-';
  put(hi, 4);
  s += '-';
  put(lo >> 48, 4);
  s += '-';
  put(lo, 12);
  return s;
}

}  // namespace qperf

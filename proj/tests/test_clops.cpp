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

#include <catch2/catch_amalgamated.hpp>

#include "qperf/clops.hpp"
#include "qperf/remote.hpp"

using namespace qperf;

namespace {

BackendConfig engine_config(QubitId n, std::uint64_t seed = 11,
                            double rep_delay = 250e-6) {
  BackendConfig cfg;
  cfg.name = "engine-test";
  cfg.num_qubits = n;
  cfg.coupling_map = CouplingMap::line(n);
  cfg.clock = ClockMode::Virtual;
  cfg.seed = seed;
  cfg.latency.rep_delay = rep_delay;
  return cfg;
}

ClopsConfig small_clops(QubitId n, std::uint32_t m, std::uint32_t k,
                        std::uint64_t shots) {
  ClopsConfig cfg;
  cfg.templates_m = m;
  cfg.updates_k = k;
  cfg.shots_s = shots;
  cfg.width_n = n;
  cfg.layers_d = n;
  cfg.qv_value = std::uint64_t{1} << n;
  cfg.master_seed = 20260810;
  return cfg;
}

}  // namespace

TEST_CASE("derive_seed matches the FNV-1a reference", "[clops]") {
  Counts counts;
  counts.shots = 1;
  counts.histogram["0"] = 1;
  CHECK(derive_seed(counts) == 7785097551093495539ULL);

  Counts empty;
  CHECK_THROWS_AS(derive_seed(empty), ParameterError);
}

TEST_CASE("derive_seed is insertion-order independent", "[clops]") {
  Counts a, b;
  a.shots = b.shots = 10;
  a.histogram["00"] = 7;
  a.histogram["01"] = 3;
  b.histogram["01"] = 3;
  b.histogram["00"] = 7;
  CHECK(a.canonical_bytes() == "00:7;01:3;");
  CHECK(derive_seed(a) == derive_seed(b));
  CHECK(derive_seed(a) == 4523253121840230792ULL);
}

TEST_CASE("derive_seed separates near-identical histograms", "[clops]") {
  // Move one shot at a time between buckets; no two seeds may collide.
  SplitMix64 rng(42);
  std::set<std::uint64_t> seeds;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Counts c;
    c.shots = 100;
    const auto moved = rng.next_below(99) + 1;
    c.histogram[index_to_bitstring(rng.next_below(16), 4)] += moved;
    c.histogram[index_to_bitstring(rng.next_below(16), 4)] += 100 - moved;
    seeds.insert(derive_seed(c));
  }
  // Distinct histograms generated above: duplicates of the construction
  // itself are possible, but collisions of distinct inputs are not.
  std::set<std::string> distinct_inputs;
  SplitMix64 rng2(42);
  for (int t = 0; t < trials; ++t) {
    Counts c;
    c.shots = 100;
    const auto moved = rng2.next_below(99) + 1;
    c.histogram[index_to_bitstring(rng2.next_below(16), 4)] += moved;
    c.histogram[index_to_bitstring(rng2.next_below(16), 4)] += 100 - moved;
    distinct_inputs.insert(c.canonical_bytes());
  }
  CHECK(seeds.size() == distinct_inputs.size());
}

TEST_CASE("next_params matches the reference stream and range", "[clops]") {
  const auto first = next_params(0, 1);
  REQUIRE(first.size() == 1);
  CHECK(first[0] == Catch::Approx(5.550005491840885).epsilon(1e-15));

  const auto many = next_params(987, 1000);
  for (const double a : many) {
    REQUIRE(a >= 0.0);
    REQUIRE(a < kTau);
  }
  CHECK(next_params(987, 1000) == many);
  CHECK_THROWS_AS(next_params(1, 0), ParameterError);
}

TEST_CASE("compute_clops reproduces the published rows", "[clops]") {
  CHECK(compute_clops(100, 10, 100, 5, 352.2) == 1419);
  CHECK(compute_clops(100, 10, 100, 5, 525.7) == 951);
  CHECK(compute_clops(100, 10, 100, 5, 663.6) == 753);
  CHECK_THROWS_AS(compute_clops(1, 1, 1, 1, 0.0), ParameterError);
  CHECK_THROWS_AS(compute_clops(1, 1, 1, 1, -3.0), ParameterError);
}

TEST_CASE("compute_depth1_rate basics", "[clops]") {
  CHECK(compute_depth1_rate(1, 1, 1, 7.0, 1.0) == 7);
  CHECK(compute_depth1_rate(100, 10, 100, 99.9, 352.2) == 28364);
  CHECK_THROWS_AS(compute_depth1_rate(1, 1, 1, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(compute_depth1_rate(1, 1, 1, 5.0, 0.0), ParameterError);
}

TEST_CASE("depth1 over clops tracks avg_depth over layers", "[clops]") {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const double t = 10.0 + rng.next_double() * 1000.0;
    const double avg = 20.0 + rng.next_double() * 100.0;
    const std::uint64_t d = 1 + rng.next_below(8);
    const auto clops = compute_clops(100, 10, 100, d, t);
    const auto d1 = compute_depth1_rate(100, 10, 100, avg, t);
    const double predicted = static_cast<double>(clops) * avg / double(d);
    CHECK(std::abs(static_cast<double>(d1) - predicted) <= avg / double(d) + 1.0);
  }
}

TEST_CASE("the formula identity run: one of everything in one second",
          "[clops]") {
  auto bcfg = engine_config(2, 3, 0.0);
  bcfg.latency.instrument_init = 1.0;
  LocalBackend backend(bcfg);
  ClopsConfig cfg = small_clops(2, 1, 1, 1);
  cfg.layers_d = 1;
  cfg.qv_value = 2;
  const ClopsReport report = run_clops(backend, bcfg.coupling_map, cfg);
  CHECK(report.total_time_s == 1.0);
  CHECK(report.clops == 1);
}

TEST_CASE("report recomputes from its own fields", "[clops]") {
  LocalBackend backend(engine_config(3));
  const ClopsConfig cfg = small_clops(3, 5, 3, 20);
  const ClopsReport r = run_clops(backend, backend.config().coupling_map, cfg);
  CHECK(r.clops == compute_clops(r.templates_m, r.updates_k, r.shots, r.layers,
                                 r.total_time_s));
  CHECK(r.depth1_per_second == compute_depth1_rate(r.templates_m, r.updates_k,
                                                   r.shots, r.avg_template_depth,
                                                   r.total_time_s));
  CHECK(r.total_time_s > 0);
  // Virtual mode: ledger and elapsed time agree exactly.
  CHECK(static_cast<double>(r.ledger.total_ns()) / 1e9 == r.total_time_s);
  // Delay category is exactly M*K*S*rep_delay.
  CHECK(r.ledger.circuit_delay_ns == 5 * 3 * 20 * 250'000LL);
}

TEST_CASE("virtual-clock runs are byte-identical across repetitions",
          "[clops]") {
  const ClopsConfig cfg = small_clops(3, 4, 3, 25);
  std::string first;
  for (int run = 0; run < 2; ++run) {
    LocalBackend backend(engine_config(3, 77));
    EventLog log;
    const ClopsReport r =
        run_clops(backend, backend.config().coupling_map, cfg, &log);
    const std::string bytes = r.to_json().dump();
    if (run == 0)
      first = bytes;
    else
      CHECK(bytes == first);
  }
}

TEST_CASE("causality audit finds no violations in a real run", "[clops]") {
  LocalBackend backend(engine_config(3, 5));
  EventLog log;
  const ClopsConfig cfg = small_clops(3, 6, 4, 10);
  run_clops(backend, backend.config().coupling_map, cfg, &log);
  const auto events = log.snapshot();
  CHECK(causality_violations(events) == 0);
  // Sanity: the audit sees every submit/result pair.
  int submits = 0;
  for (const auto& e : events) submits += e.kind == EventKind::Submit ? 1 : 0;
  CHECK(submits == 6 * 4);
}

TEST_CASE("causality audit flags fabricated violations", "[clops]") {
  std::vector<Event> events;
  events.push_back({0, EventKind::PrepDone, 0, -1, 0.0});
  events.push_back({1, EventKind::TimingStart, 0, -1, 0.0});
  events.push_back({2, EventKind::Submit, 0, 0, 0.0});
  events.push_back({3, EventKind::Submit, 0, 1, 0.0});  // before result of k=0
  events.push_back({4, EventKind::ResultReceived, 0, 0, 0.0});
  events.push_back({5, EventKind::ResultReceived, 0, 1, 0.0});
  CHECK(causality_violations(events) == 1);
}

TEST_CASE("noiseless CLOPS circuits keep their quality", "[clops]") {
  LocalBackend backend(engine_config(4, 21));
  ClopsConfig cfg = small_clops(4, 5, 2, 100);
  cfg.measure_hop = true;
  const ClopsReport r = run_clops(backend, backend.config().coupling_map, cfg);
  REQUIRE(r.mean_hop.has_value());
  CHECK(*r.mean_hop > 2.0 / 3.0);
}

TEST_CASE("server-side binding changes transport, not results", "[clops]") {
  ClopsConfig cfg = small_clops(3, 3, 3, 30);
  cfg.measure_hop = true;

  LocalBackend a(engine_config(3, 99));
  const ClopsReport client_side = run_clops(a, a.config().coupling_map, cfg);

  cfg.server_side_binding = true;
  LocalBackend b(engine_config(3, 99));
  const ClopsReport server_side = run_clops(b, b.config().coupling_map, cfg);

  CHECK(client_side.clops == server_side.clops);
  CHECK(client_side.ledger.circuit_execution_ns ==
        server_side.ledger.circuit_execution_ns);
  CHECK(*client_side.mean_hop == *server_side.mean_hop);
}

TEST_CASE("config validation and QV coupling", "[clops]") {
  LocalBackend backend(engine_config(3));
  ClopsConfig cfg = small_clops(3, 2, 2, 5);
  cfg.qv_value = 6;  // not a power of two
  CHECK_THROWS_AS(cfg.validate(backend), ValidationError);
  cfg.qv_value = 16;  // log2 = 4 but layers = 3
  CHECK_THROWS_AS(cfg.validate(backend), ValidationError);
  cfg = small_clops(6, 2, 2, 5);  // wider than the backend
  CHECK_THROWS_AS(cfg.validate(backend), CapacityError);

  QVResult failed;
  failed.width = 3;
  failed.passed = false;
  CHECK_THROWS_AS(ClopsConfig::from_qv_result(failed), ValidationError);

  QVResult passed;
  passed.width = 3;
  passed.passed = true;
  passed.qv_value = 8;
  passed.shots = 100;
  passed.qubits = {0, 1, 2};
  const ClopsConfig derived = ClopsConfig::from_qv_result(passed);
  CHECK(derived.layers_d == 3);
  CHECK(derived.qv_value == 8);
  CHECK(derived.shots_s == 100);
}

TEST_CASE("backend failure mid-run aborts with a partial ledger",
          "[clops][slow]") {
  // A remote backend whose server is already gone: every submission fails
  // after its retry budget.
  std::uint16_t dead_port;
  {
    BackendConfig cfg = engine_config(3);
    LocalBackend served(cfg);
    WireServer server(served, "127.0.0.1", 0);
    dead_port = server.port();
  }
  RemoteBackend remote("127.0.0.1", dead_port, "gone", 3);
  const ClopsConfig cfg = small_clops(3, 2, 2, 5);
  CHECK_THROWS_AS(run_clops(remote, CouplingMap::line(3), cfg), ClopsAborted);
}

TEST_CASE("report JSON round trips", "[clops]") {
  LocalBackend backend(engine_config(3, 13));
  const ClopsConfig cfg = small_clops(3, 2, 2, 10);
  const ClopsReport r = run_clops(backend, backend.config().coupling_map, cfg);
  const ClopsReport back = ClopsReport::from_json(r.to_json());
  CHECK(back.to_json().dump() == r.to_json().dump());
}

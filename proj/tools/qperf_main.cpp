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

#include <CLI11.hpp>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>

#include "qperf/clops.hpp"
#include "qperf/qv_protocol.hpp"
#include "qperf/remote.hpp"
#include "qperf/report.hpp"

namespace {

using namespace qperf;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;

int fail(const std::string& code, const std::string& message,
         int exit_code, const std::string& file = {}) {
  json e;
  e["error"]["code"] = code;
  e["error"]["message"] = message;
  if (!file.empty()) e["error"]["file"] = file;
  std::cerr << e.dump() << std::endl;
  return exit_code;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  const std::string payload = j.dump();
  std::cout << payload << std::endl;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParameterError("cannot write file: " + out_path);
    out << payload << '\n';
  }
}

struct LoadedBackend {
  std::unique_ptr<Backend> backend;
  CouplingMap coupling_map;
  bool local = true;
};

LoadedBackend load_backend(const std::string& path) {
  const json j = load_json_file(path);
  LoadedBackend out;
  if (j.value("type", std::string()) == "remote") {
    const auto host = j.at("host").get<std::string>();
    const auto port = j.at("port").get<std::uint16_t>();
    const auto name = j.value("name", host + ":" + std::to_string(port));
    const auto n = j.at("num_qubits").get<QubitId>();
    out.coupling_map = j.contains("coupling_map")
                           ? CouplingMap::from_json(j["coupling_map"])
                           : CouplingMap::line(n);
    out.backend = std::make_unique<RemoteBackend>(host, port, name, n);
    out.local = false;
    return out;
  }
  const BackendConfig cfg = BackendConfig::from_json(j);
  out.coupling_map = cfg.coupling_map;
  out.backend = std::make_unique<LocalBackend>(cfg);
  return out;
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

int cmd_qv(const std::string& backend_path, QubitId width, QVOptions opts,
           const std::string& out_path) {
  LoadedBackend lb = load_backend(backend_path);
  const QVResult r = run_qv(*lb.backend, lb.coupling_map, width, opts);
  emit(r.to_json(), out_path);
  return kExitOk;
}

int cmd_clops(const std::string& backend_path, const std::string& qv_path,
              std::uint32_t m, std::uint32_t k, std::uint64_t shots,
              std::uint64_t seed, bool bind_on_backend, bool with_hop,
              bool breakdown, const std::string& out_path) {
  LoadedBackend lb = load_backend(backend_path);
  const QVResult qv = QVResult::from_json(load_json_file(qv_path));
  ClopsConfig cfg = ClopsConfig::from_qv_result(qv);
  cfg.templates_m = m;
  cfg.updates_k = k;
  if (shots) cfg.shots_s = shots;
  cfg.master_seed = seed;
  cfg.server_side_binding = bind_on_backend;
  cfg.measure_hop = with_hop;
  EventLog log;
  const ClopsReport report = run_clops(*lb.backend, lb.coupling_map, cfg, &log);
  emit(report.to_json(), out_path);
  if (breakdown) std::cerr << render_breakdown_table(report);
  return kExitOk;
}

int cmd_serve(const std::string& backend_path, const std::string& host,
              std::uint16_t port) {
  const json j = load_json_file(backend_path);
  if (j.value("type", std::string()) == "remote")
    throw ParameterError("serve requires a local backend config");
  const BackendConfig cfg = BackendConfig::from_json(j);
  LocalBackend backend(cfg);
  WireServer server(backend, host, port);
  std::cerr << "serving \"" << cfg.name << "\" on " << host << ":"
            << server.port() << std::endl;
  std::mutex mu;
  std::condition_variable cv;
  std::unique_lock lock(mu);
  cv.wait(lock, [] { return false; });  // run until killed
  return kExitOk;
}

int cmd_report(const std::vector<std::string>& files, bool as_json) {
  std::vector<ClopsReport> reports;
  for (const auto& file : files) {
    try {
      reports.push_back(ClopsReport::from_json(load_json_file(file)));
    } catch (const std::exception& e) {
      return fail("bad_report", e.what(), kExitUsage, file);
    }
  }
  if (as_json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    std::cout << arr.dump() << std::endl;
  } else {
    std::cout << render_report_table(reports);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale, quality and speed benchmarks for simulated QPUs"};
  app.require_subcommand(1);

  std::string backend_path, out_path;
  std::uint64_t seed = random_seed();

  auto* qv = app.add_subcommand("qv", "Measure quantum volume");
  QubitId qv_width = 0;
  QVOptions qv_opts;
  qv->add_option("--backend", backend_path, "backend config JSON")->required();
  qv->add_option("--width", qv_width, "circuit width N")->required();
  qv->add_option("--circuits", qv_opts.num_circuits, "number of circuits");
  qv->add_option("--shots", qv_opts.shots, "shots per circuit");
  qv->add_option("--z", qv_opts.z, "confidence sigmas");
  qv->add_option("--seed", seed, "master seed (random when omitted)");
  qv->add_option("--out", out_path, "also write the result JSON here");

  auto* clops = app.add_subcommand("clops", "Run the CLOPS benchmark");
  std::string qv_result_path;
  std::uint32_t m = 100, k = 10;
  std::uint64_t shots = 0;
  bool breakdown = false, bind_on_backend = false, with_hop = false;
  clops->add_option("--backend", backend_path, "backend config JSON")->required();
  clops->add_option("--qv-result", qv_result_path, "QV result JSON from `qv`")
      ->required();
  clops->add_option("--m", m, "number of templates");
  clops->add_option("--k", k, "parameter updates per template");
  clops->add_option("--shots", shots, "shots per circuit (default: QV's)");
  clops->add_option("--seed", seed, "master seed (random when omitted)");
  clops->add_flag("--breakdown", breakdown, "print the timing table to stderr");
  clops->add_flag("--bind-on-backend", bind_on_backend,
                  "send templates and parameters instead of native circuits");
  clops->add_flag("--hop", with_hop, "track heavy-output probability");
  clops->add_option("--out", out_path, "also write the report JSON here");

  auto* serve = app.add_subcommand("serve", "Serve a backend over TCP");
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  serve->add_option("--backend", backend_path, "backend config JSON")->required();
  serve->add_option("--host", host, "listen address");
  serve->add_option("--port", port, "listen port (0 picks one)");

  auto* report = app.add_subcommand("report", "Render benchmark reports");
  std::vector<std::string> report_files;
  bool as_json = false;
  report->add_option("files", report_files, "ClopsReport JSON files");
  report->add_flag("--json", as_json, "emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::stringstream ss;
    ss << e.what();
    return fail("usage", ss.str(), kExitUsage);
  }

  try {
    if (*qv) return cmd_qv(backend_path, qv_width, [&] {
      QVOptions o = qv_opts;
      o.seed = seed;
      return o;
    }(), out_path);
    if (*clops)
      return cmd_clops(backend_path, qv_result_path, m, k, shots, seed,
                       bind_on_backend, with_hop, breakdown, out_path);
    if (*serve) return cmd_serve(backend_path, host, port);
    if (*report) return cmd_report(report_files, as_json);
  } catch (const TransportError& e) {
    return fail("transport", e.what(), kExitTransport);
  } catch (const ClopsAborted& e) {
    json partial;
    partial["partial_timing"] = e.partial_ledger.to_json();
    std::cerr << partial.dump() << std::endl;
    return fail("aborted", e.what(), kExitTransport);
  } catch (const ParameterError& e) {
    return fail("parameter", e.what(), kExitUsage);
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), kExitUsage);
  } catch (const CapacityError& e) {
    return fail("capacity", e.what(), kExitUsage);
  } catch (const json::exception& e) {
    return fail("bad_json", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitError);
  }
  return kExitUsage;
}

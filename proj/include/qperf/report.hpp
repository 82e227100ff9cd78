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

#include <sstream>
#include <string>
#include <vector>

#include "qperf/clops.hpp"

namespace qperf {

/// Results table over one or more benchmark reports.
inline std::string render_report_table(const std::vector<ClopsReport>& reports) {
  const std::vector<std::string> headers = {
      "Device", "Qubits", "QV",    "Layers",
      "Shots",  "CLOPS",  "depth-1 circ per second"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports)
    rows.push_back({r.device, std::to_string(r.device_qubits),
                    std::to_string(r.qv_value), std::to_string(r.layers),
                    std::to_string(r.shots), std::to_string(r.clops),
                    std::to_string(r.depth1_per_second)});

  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  const auto emit_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? " | " : "");
      out << cells[c];
      out << std::string(width[c] - cells[c].size(), ' ');
    }
    out << '\n';
  };
  emit_row(headers);
  std::size_t rule = 0;
  for (std::size_t c = 0; c < width.size(); ++c)
    rule += width[c] + (c ? 3 : 0);
  out << std::string(rule, '-') << '\n';
  for (const auto& row : rows) emit_row(row);
  return out.str();
}

/// Three-category timing table for one report.
inline std::string render_breakdown_table(const ClopsReport& r) {
  std::ostringstream out;
  out << "Time breakdown for " << r.device << " (seconds)\n";
  out << "  total time                       " << r.total_time_s << '\n';
  out << "  circuit execution                "
      << r.ledger.circuit_execution_ns / 1e9 << '\n';
  out << "  circuit delay                    "
      << r.ledger.circuit_delay_ns / 1e9 << '\n';
  out << "  run-time compilation & transfer  "
      << r.ledger.runtime_compile_and_transfer_ns / 1e9 << '\n';
  return out.str();
}

}  // namespace qperf

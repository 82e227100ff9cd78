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

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "qperf/circuit.hpp"
#include "qperf/errors.hpp"

namespace qperf {

/// Undirected connectivity graph of a device.
class CouplingMap {
 public:
  CouplingMap() = default;

  CouplingMap(QubitId num_qubits, std::vector<std::pair<QubitId, QubitId>> edges)
      : num_qubits_(num_qubits), adjacency_(num_qubits) {
    for (const auto& [a, b] : edges) {
      if (a >= num_qubits || b >= num_qubits || a == b)
        throw ValidationError("coupling edge references invalid qubits");
      edges_.insert({std::min(a, b), std::max(a, b)});
    }
    for (const auto& [a, b] : edges_) {
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
    if (num_qubits_ > 0 && !connected())
      throw ValidationError("coupling map must be connected");
  }

  /// Line of n qubits: edges (0,1),(1,2),...
  static CouplingMap line(QubitId n) {
    std::vector<std::pair<QubitId, QubitId>> edges;
    for (QubitId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return CouplingMap(n, std::move(edges));
  }

  QubitId num_qubits() const { return num_qubits_; }

  bool has_edge(QubitId a, QubitId b) const {
    return edges_.count({std::min(a, b), std::max(a, b)}) > 0;
  }

  const std::vector<QubitId>& neighbors(QubitId q) const {
    return adjacency_.at(q);
  }

  /// BFS shortest path (inclusive of endpoints); deterministic tie-breaks.
  std::vector<QubitId> shortest_path(QubitId from, QubitId to) const {
    std::vector<int> prev(num_qubits_, -1);
    std::deque<QubitId> queue{from};
    std::vector<bool> seen(num_qubits_, false);
    seen[from] = true;
    while (!queue.empty()) {
      const QubitId cur = queue.front();
      queue.pop_front();
      if (cur == to) break;
      for (QubitId nxt : adjacency_[cur]) {
        if (seen[nxt]) continue;
        seen[nxt] = true;
        prev[nxt] = static_cast<int>(cur);
        queue.push_back(nxt);
      }
    }
    if (!seen[to]) throw RoutingError("qubits are not connected");
    std::vector<QubitId> path{to};
    while (path.back() != from)
      path.push_back(static_cast<QubitId>(prev[path.back()]));
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// If the graph is a simple path, its qubits in line order; empty otherwise.
  std::vector<QubitId> line_order() const {
    if (edges_.size() + 1 != num_qubits_) return {};
    QubitId endpoint = num_qubits_;
    for (QubitId q = 0; q < num_qubits_; ++q) {
      if (adjacency_[q].size() > 2) return {};
      if (adjacency_[q].size() == 1 && endpoint == num_qubits_) endpoint = q;
    }
    if (num_qubits_ == 1) return {0};
    if (endpoint == num_qubits_) return {};
    std::vector<QubitId> order{endpoint};
    std::vector<bool> used(num_qubits_, false);
    used[endpoint] = true;
    while (order.size() < num_qubits_) {
      bool advanced = false;
      for (QubitId nxt : adjacency_[order.back()]) {
        if (used[nxt]) continue;
        order.push_back(nxt);
        used[nxt] = true;
        advanced = true;
        break;
      }
      if (!advanced) return {};
    }
    return order;
  }

  json to_json() const {
    json j;
    j["num_qubits"] = num_qubits_;
    json e = json::array();
    for (const auto& [a, b] : edges_) e.push_back(json::array({a, b}));
    j["edges"] = std::move(e);
    return j;
  }

  static CouplingMap from_json(const json& j) {
    const auto n = j.at("num_qubits").get<QubitId>();
    std::vector<std::pair<QubitId, QubitId>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<QubitId>(), e.at(1).get<QubitId>());
    return CouplingMap(n, std::move(edges));
  }

 private:
  bool connected() const {
    std::vector<bool> seen(num_qubits_, false);
    std::deque<QubitId> queue{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!queue.empty()) {
      const QubitId cur = queue.front();
      queue.pop_front();
      for (QubitId nxt : adjacency_[cur])
        if (!seen[nxt]) {
          seen[nxt] = true;
          ++count;
          queue.push_back(nxt);
        }
    }
    return count == num_qubits_;
  }

  QubitId num_qubits_ = 0;
  std::set<std::pair<QubitId, QubitId>> edges_;
  std::vector<std::vector<QubitId>> adjacency_;
};

}  // namespace qperf

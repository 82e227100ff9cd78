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
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qperf/errors.hpp"
#include "qperf/linalg.hpp"

namespace qperf {

using json = nlohmann::ordered_json;
using QubitId = std::uint32_t;

enum class GateKind { SX, X, RZ, CX, Measure, Barrier, SU4, Perm };

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::SX: return "sx";
    case GateKind::X: return "x";
    case GateKind::RZ: return "rz";
    case GateKind::CX: return "cx";
    case GateKind::Measure: return "measure";
    case GateKind::Barrier: return "barrier";
    case GateKind::SU4: return "su4";
    case GateKind::Perm: return "perm";
  }
  return "?";
}

inline GateKind gate_kind_from_name(const std::string& name) {
  if (name == "sx") return GateKind::SX;
  if (name == "x") return GateKind::X;
  if (name == "rz") return GateKind::RZ;
  if (name == "cx") return GateKind::CX;
  if (name == "measure") return GateKind::Measure;
  if (name == "barrier") return GateKind::Barrier;
  if (name == "su4") return GateKind::SU4;
  if (name == "perm") return GateKind::Perm;
  throw ValidationError("unknown gate name: " + name);
}

/// One circuit operation. Payload conventions:
///   rz       params = {angle}
///   su4      params = 15 angles (parameterized form) or 32 reals
///            (explicit matrix, row-major, re/im interleaved)
///   perm     params[i] = destination wire of the state on qubits[i]
///   measure  qubits = {q}, params = {clbit} (defaults to q when empty)
struct GateOp {
  GateKind kind;
  std::vector<QubitId> qubits;
  std::vector<double> params;

  bool is_native() const {
    switch (kind) {
      case GateKind::SX:
      case GateKind::X:
      case GateKind::RZ:
      case GateKind::CX:
      case GateKind::Measure:
      case GateKind::Barrier:
        return true;
      default:
        return false;
    }
  }

  QubitId measure_clbit() const {
    return params.empty() ? qubits.at(0)
                          : static_cast<QubitId>(std::llround(params[0]));
  }
};

inline GateOp make_op(GateKind k, std::vector<QubitId> qs,
                      std::vector<double> ps = {}) {
  return GateOp{k, std::move(qs), std::move(ps)};
}

/// SU4 op carrying an explicit 4x4 unitary.
inline GateOp make_su4_matrix_op(QubitId a, QubitId b, const Mat4& u) {
  std::vector<double> ps;
  ps.reserve(32);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      ps.push_back(u(r, c).real());
      ps.push_back(u(r, c).imag());
    }
  return GateOp{GateKind::SU4, {a, b}, std::move(ps)};
}

inline Mat4 su4_op_matrix_payload(const GateOp& op) {
  Mat4 u;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      u(r, c) = cd(op.params[2 * (4 * r + c)], op.params[2 * (4 * r + c) + 1]);
  return u;
}

inline GateOp make_perm_op(const std::vector<QubitId>& qubits,
                           const std::vector<QubitId>& destinations) {
  std::vector<double> ps(destinations.begin(), destinations.end());
  return GateOp{GateKind::Perm, qubits, std::move(ps)};
}

inline std::vector<QubitId> perm_destinations(const GateOp& op) {
  std::vector<QubitId> dest;
  dest.reserve(op.params.size());
  for (double p : op.params) dest.push_back(static_cast<QubitId>(std::llround(p)));
  return dest;
}

/// Ordered sequence of operations on `width` qubits.
struct Circuit {
  QubitId width = 0;
  std::vector<GateOp> ops;
  QubitId num_clbits = 0;

  void add(GateOp op) { ops.push_back(std::move(op)); }

  /// Checks the structural invariants; throws ValidationError on breach.
  void validate() const;

  json to_json() const;
  static Circuit from_json(const json& j);

  /// Compact single-line JSON; canonical bytes for hashing and the wire.
  std::string canonical_json() const { return to_json().dump(); }
};

inline void Circuit::validate() const {
  std::vector<bool> measured(width, false);
  for (const auto& op : ops) {
    for (QubitId q : op.qubits)
      if (q >= width) throw ValidationError("qubit index out of range");
    switch (op.kind) {
      case GateKind::RZ:
        if (op.qubits.size() != 1 || op.params.size() != 1)
          throw ValidationError("rz takes 1 qubit and 1 angle");
        break;
      case GateKind::SX:
      case GateKind::X:
        if (op.qubits.size() != 1) throw ValidationError("1-qubit gate arity");
        break;
      case GateKind::CX:
        if (op.qubits.size() != 2 || op.qubits[0] == op.qubits[1])
          throw ValidationError("cx needs 2 distinct qubits");
        break;
      case GateKind::SU4:
        if (op.qubits.size() != 2 || op.qubits[0] == op.qubits[1])
          throw ValidationError("su4 needs 2 distinct qubits");
        if (op.params.size() != 15 && op.params.size() != 32)
          throw ValidationError("su4 carries 15 params or a 32-real matrix");
        break;
      case GateKind::Perm: {
        if (op.params.size() != op.qubits.size())
          throw ValidationError("perm destination count mismatch");
        auto sorted_q = op.qubits;
        std::sort(sorted_q.begin(), sorted_q.end());
        if (std::adjacent_find(sorted_q.begin(), sorted_q.end()) != sorted_q.end())
          throw ValidationError("perm qubits must be distinct");
        auto dest = perm_destinations(op);
        std::sort(dest.begin(), dest.end());
        if (dest != sorted_q)
          throw ValidationError("perm destinations must permute its qubits");
        break;
      }
      case GateKind::Measure:
        if (op.qubits.size() != 1) throw ValidationError("measure arity");
        if (measured[op.qubits[0]])
          throw ValidationError("qubit measured more than once");
        measured[op.qubits[0]] = true;
        break;
      case GateKind::Barrier:
        break;
    }
    for (double p : op.params)
      if (!std::isfinite(p)) throw ValidationError("non-finite parameter");
  }
}

inline json Circuit::to_json() const {
  json j;
  j["width"] = width;
  json ops_j = json::array();
  for (const auto& op : ops) {
    json o;
    o["name"] = gate_name(op.kind);
    o["qubits"] = op.qubits;
    o["params"] = op.params;
    ops_j.push_back(std::move(o));
  }
  j["ops"] = std::move(ops_j);
  return j;
}

inline Circuit Circuit::from_json(const json& j) {
  Circuit c;
  c.width = j.at("width").get<QubitId>();
  c.num_clbits = c.width;
  for (const auto& o : j.at("ops")) {
    GateOp op;
    op.kind = gate_kind_from_name(o.at("name").get<std::string>());
    op.qubits = o.at("qubits").get<std::vector<QubitId>>();
    op.params = o.at("params").get<std::vector<double>>();
    c.ops.push_back(std::move(op));
  }
  c.validate();
  return c;
}

}  // namespace qperf

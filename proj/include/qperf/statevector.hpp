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
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qperf/circuit.hpp"
#include "qperf/linalg.hpp"
#include "qperf/qv_circuits.hpp"
#include "qperf/rng.hpp"

namespace qperf {

/// Dense 2^N-amplitude state. Amplitude index bit q is qubit q (qubit 0 is
/// the least significant bit).
struct Statevector {
  QubitId width = 0;
  std::vector<cd> amps;

  static Statevector zero_state(QubitId width) {
    Statevector sv;
    sv.width = width;
    sv.amps.assign(std::size_t{1} << width, cd(0, 0));
    sv.amps[0] = cd(1, 0);
    return sv;
  }

  double norm_sq() const {
    double s = 0;
    for (const cd& a : amps) s += std::norm(a);
    return s;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) p[i] = std::norm(amps[i]);
    return p;
  }
};

/// Bitstring convention for outcome keys: leftmost character = qubit 0.
inline std::string index_to_bitstring(std::uint64_t index, QubitId width) {
  std::string s(width, '0');
  for (QubitId q = 0; q < width; ++q)
    if ((index >> q) & 1) s[q] = '1';
  return s;
}

inline std::uint64_t bitstring_to_index(const std::string& key) {
  std::uint64_t index = 0;
  for (std::size_t q = 0; q < key.size(); ++q) {
    if (key[q] == '1')
      index |= std::uint64_t{1} << q;
    else if (key[q] != '0')
      throw ValidationError("bitstring key must be binary");
  }
  return index;
}

/// Measurement histogram for one circuit execution.
struct Counts {
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> histogram;  // bitstring -> count

  json to_json() const {
    json j;
    j["shots"] = shots;
    json h = json::object();
    for (const auto& [k, v] : histogram) h[k] = v;
    j["counts"] = std::move(h);
    return j;
  }

  static Counts from_json(const json& j) {
    Counts c;
    c.shots = j.at("shots").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("counts").items())
      c.histogram[k] = v.get<std::uint64_t>();
    return c;
  }

  /// Canonical byte string "key:count;" over lexicographically sorted keys;
  /// the input to the parameter-update seed hash.
  std::string canonical_bytes() const {
    std::string out;
    for (const auto& [k, v] : histogram) {
      out += k;
      out += ':';
      out += std::to_string(v);
      out += ';';
    }
    return out;
  }
};

/// Depolarizing noise strengths; zero means ideal execution.
struct NoiseModel {
  double p1 = 0.0;  // per 1-qubit gate
  double p2 = 0.0;  // per 2-qubit gate

  bool enabled() const { return p1 > 0.0 || p2 > 0.0; }
};

namespace detail {

inline void apply_mat2(Statevector& sv, QubitId q, const Mat2& m) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const std::uint64_t n = sv.amps.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i & bit) continue;
    const cd a0 = sv.amps[i];
    const cd a1 = sv.amps[i | bit];
    sv.amps[i] = m(0, 0) * a0 + m(0, 1) * a1;
    sv.amps[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

/// 4x4 matrix on (qa, qb); qa indexes the low bit of the 4-dim basis.
inline void apply_mat4(Statevector& sv, QubitId qa, QubitId qb, const Mat4& m) {
  const std::uint64_t ba = std::uint64_t{1} << qa;
  const std::uint64_t bb = std::uint64_t{1} << qb;
  const std::uint64_t n = sv.amps.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    if ((i & ba) || (i & bb)) continue;
    cd v[4] = {sv.amps[i], sv.amps[i | ba], sv.amps[i | bb],
               sv.amps[i | ba | bb]};
    for (int r = 0; r < 4; ++r) {
      cd acc(0, 0);
      for (int c = 0; c < 4; ++c) acc += m(r, c) * v[c];
      sv.amps[i | (r & 1 ? ba : 0) | (r & 2 ? bb : 0)] = acc;
    }
  }
}

inline void apply_x(Statevector& sv, QubitId q) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < sv.amps.size(); ++i)
    if (!(i & bit)) std::swap(sv.amps[i], sv.amps[i | bit]);
}

inline void apply_cx(Statevector& sv, QubitId control, QubitId target) {
  const std::uint64_t cb = std::uint64_t{1} << control;
  const std::uint64_t tb = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < sv.amps.size(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(sv.amps[i], sv.amps[i | tb]);
}

/// Wire relabeling: the state on qubit q moves to qubit dest[q].
inline void apply_perm(Statevector& sv, const std::vector<QubitId>& qubits,
                       const std::vector<QubitId>& dest) {
  std::vector<QubitId> map(sv.width);
  for (QubitId q = 0; q < sv.width; ++q) map[q] = q;
  for (std::size_t k = 0; k < qubits.size(); ++k) map[qubits[k]] = dest[k];
  std::vector<cd> out(sv.amps.size());
  for (std::uint64_t i = 0; i < sv.amps.size(); ++i) {
    std::uint64_t j = 0;
    for (QubitId q = 0; q < sv.width; ++q)
      if ((i >> q) & 1) j |= std::uint64_t{1} << map[q];
    out[j] = sv.amps[i];
  }
  sv.amps = std::move(out);
}

inline void apply_unitary_op(Statevector& sv, const GateOp& op) {
  switch (op.kind) {
    case GateKind::SX:
      apply_mat2(sv, op.qubits[0], gates::sx());
      break;
    case GateKind::X:
      apply_x(sv, op.qubits[0]);
      break;
    case GateKind::RZ:
      apply_mat2(sv, op.qubits[0], gates::rz(op.params[0]));
      break;
    case GateKind::CX:
      apply_cx(sv, op.qubits[0], op.qubits[1]);
      break;
    case GateKind::SU4: {
      const Mat4 u = op.params.size() == 15 ? su4_from_params(op.params)
                                            : su4_op_matrix_payload(op);
      apply_mat4(sv, op.qubits[0], op.qubits[1], u);
      break;
    }
    case GateKind::Perm:
      apply_perm(sv, op.qubits, perm_destinations(op));
      break;
    case GateKind::Barrier:
      break;
    case GateKind::Measure:
      throw ValidationError("measure is not a unitary op");
  }
}

}  // namespace detail

inline constexpr QubitId kDefaultSimCap = 14;

/// Exact statevector of the unitary part of `c`. Trailing measurements are
/// ignored here (they only name the readout map); mid-circuit measurement is
/// rejected.
inline Statevector simulate(const Circuit& c, QubitId width_cap = kDefaultSimCap) {
  if (c.width > width_cap) throw CapacityError("circuit width exceeds simulator cap");
  c.validate();
  Statevector sv = Statevector::zero_state(c.width);
  std::vector<bool> measured(c.width, false);
  for (const auto& op : c.ops) {
    if (op.kind == GateKind::Measure) {
      measured[op.qubits[0]] = true;
      continue;
    }
    if (op.kind != GateKind::Barrier)
      for (QubitId q : op.qubits)
        if (measured[q]) throw ValidationError("mid-circuit measurement unsupported");
    detail::apply_unitary_op(sv, op);
  }
  return sv;
}

/// The circuit's readout map as (qubit, clbit) pairs in op order.
inline std::vector<std::pair<QubitId, QubitId>> measure_map(const Circuit& c) {
  std::vector<std::pair<QubitId, QubitId>> mm;
  for (const auto& op : c.ops)
    if (op.kind == GateKind::Measure)
      mm.emplace_back(op.qubits[0], op.measure_clbit());
  return mm;
}

/// `shots` independent draws from |amp|^2. Keys use the qubit-order
/// bitstring convention (leftmost character = qubit 0).
inline Counts sample(const Statevector& sv, std::uint64_t shots, SplitMix64& rng) {
  std::vector<double> cdf(sv.amps.size());
  double acc = 0;
  for (std::size_t i = 0; i < sv.amps.size(); ++i) {
    acc += std::norm(sv.amps[i]);
    cdf[i] = acc;
  }
  Counts counts;
  counts.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double r = rng.next_double() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    const auto idx = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
    counts.histogram[index_to_bitstring(idx, sv.width)]++;
  }
  return counts;
}

namespace detail {

inline void insert_depolarizing(Statevector& sv, const GateOp& op,
                                const NoiseModel& noise, SplitMix64& rng) {
  double p = 0.0;
  std::vector<QubitId> qs;
  if (op.kind == GateKind::CX || op.kind == GateKind::SU4) {
    p = noise.p2;
    qs = op.qubits;
  } else if (op.kind == GateKind::SX || op.kind == GateKind::X ||
             op.kind == GateKind::RZ) {
    p = noise.p1;
    qs = op.qubits;
  } else {
    return;
  }
  if (p <= 0.0 || rng.next_double() >= p) return;
  // Uniform non-identity Pauli on the touched qubits.
  const std::uint64_t options =
      (qs.size() == 1) ? 3 : 15;  // 4^k - 1 non-identity choices
  std::uint64_t pick = rng.next_below(options) + 1;
  for (QubitId q : qs) {
    switch (pick & 3) {
      case 1: apply_x(sv, q); break;
      case 2: apply_mat2(sv, q, gates::pauli_z()); break;
      case 3: apply_mat2(sv, q, gates::pauli_y()); break;
      default: break;
    }
    pick >>= 2;
  }
}

}  // namespace detail

namespace detail {

/// The circuit restricted to the qubits it actually touches, with the
/// original indices of those qubits. Wide devices stay simulable as long as
/// the active set fits the cap.
inline std::pair<Circuit, std::vector<QubitId>> compact_circuit(const Circuit& c) {
  std::vector<bool> touched(c.width, false);
  for (const auto& op : c.ops)
    for (QubitId q : op.qubits) touched[q] = true;
  std::vector<QubitId> active;
  std::vector<QubitId> to_compact(c.width, 0);
  for (QubitId q = 0; q < c.width; ++q)
    if (touched[q]) {
      to_compact[q] = static_cast<QubitId>(active.size());
      active.push_back(q);
    }
  Circuit out;
  out.width = std::max<QubitId>(1, static_cast<QubitId>(active.size()));
  out.num_clbits = c.num_clbits;
  out.ops = c.ops;
  for (auto& op : out.ops)
    for (auto& q : op.qubits) q = to_compact[q];
  return {std::move(out), std::move(active)};
}

}  // namespace detail

/// Execute a circuit and histogram outcomes through its readout map. With
/// noise enabled this runs per-shot Pauli-insertion trajectories; ideal
/// execution simulates once and samples the distribution. Only the touched
/// qubits are simulated, so the width cap applies to the active set.
inline Counts execute_counts(const Circuit& c, std::uint64_t shots,
                             SplitMix64& rng, const NoiseModel& noise = {},
                             QubitId width_cap = kDefaultSimCap) {
  const auto [compact, active] = detail::compact_circuit(c);
  const auto mm = measure_map(compact);  // compact qubit -> clbit
  const QubitId num_clbits = c.num_clbits ? c.num_clbits : c.width;
  const auto relabel = [&, &active_ref = active](std::uint64_t idx) {
    if (mm.empty()) {
      // No readout map: key the outcome by the full-width qubit order.
      std::string s(c.width, '0');
      for (std::size_t a = 0; a < active_ref.size(); ++a)
        if ((idx >> a) & 1) s[active_ref[a]] = '1';
      return s;
    }
    std::string s(num_clbits, '0');
    for (const auto& [q, cl] : mm)
      if ((idx >> q) & 1) s[cl] = '1';
    return s;
  };

  Counts out;
  out.shots = shots;
  if (!noise.enabled()) {
    const Statevector sv = simulate(compact, width_cap);
    const Counts raw = sample(sv, shots, rng);
    for (const auto& [k, v] : raw.histogram)
      out.histogram[relabel(bitstring_to_index(k))] += v;
    return out;
  }

  if (compact.width > width_cap)
    throw CapacityError("circuit width exceeds simulator cap");
  compact.validate();
  for (std::uint64_t s = 0; s < shots; ++s) {
    Statevector sv = Statevector::zero_state(compact.width);
    for (const auto& op : compact.ops) {
      if (op.kind == GateKind::Measure) continue;
      detail::apply_unitary_op(sv, op);
      detail::insert_depolarizing(sv, op, noise, rng);
    }
    const double r = rng.next_double() * sv.norm_sq();
    double acc = 0;
    std::uint64_t idx = sv.amps.size() - 1;
    for (std::uint64_t i = 0; i < sv.amps.size(); ++i) {
      acc += std::norm(sv.amps[i]);
      if (r < acc) {
        idx = i;
        break;
      }
    }
    out.histogram[relabel(idx)]++;
  }
  return out;
}

/// Outcome indices whose probability strictly exceeds the median of all 2^N
/// probabilities. A uniform distribution therefore has an empty heavy set.
inline std::vector<std::uint64_t> heavy_set(const std::vector<double>& probs) {
  double total = 0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > 1e-9)
    throw ParameterError("probabilities must sum to 1");
  std::vector<double> sorted = probs;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = (n % 2 == 0) ? 0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
                                     : sorted[n / 2];
  std::vector<std::uint64_t> heavy;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > median) heavy.push_back(i);
  return heavy;
}

/// Fraction of shots that landed in the heavy set.
inline double heavy_output_probability(const Counts& counts,
                                       const std::vector<std::uint64_t>& heavy) {
  if (counts.shots == 0 || counts.histogram.empty())
    throw ParameterError("counts must be nonempty");
  std::uint64_t hit = 0;
  for (const auto& [k, v] : counts.histogram)
    if (std::binary_search(heavy.begin(), heavy.end(), bitstring_to_index(k)))
      hit += v;
  return static_cast<double>(hit) / static_cast<double>(counts.shots);
}

}  // namespace qperf

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

#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "qperf/coupling.hpp"
#include "qperf/kak.hpp"
#include "qperf/qv_circuits.hpp"

namespace qperf {

/// Offline-compiled circuit: native ops only ({SX, X, RZ, CX, MEASURE,
/// BARRIER}), every CX on a coupling edge. `layout[wire]` is the physical
/// qubit holding that wire's state after the final op.
struct NativeCircuit {
  Circuit circuit;
  std::vector<QubitId> layout;
};

namespace detail {

/// Builds native op lists. Single-qubit factors accumulate per physical
/// qubit and flush as one canonical RZ-SX-RZ-SX-RZ run when a two-qubit
/// gate, barrier, or measurement needs the wire. Emission decisions are
/// strictly structural (never angle-dependent) so rebinding a template's
/// parameters cannot change the op sequence shape or its depth.
class NativeEmitter {
 public:
  explicit NativeEmitter(QubitId num_phys)
      : pending_(num_phys, Mat2::Identity()), dirty_(num_phys, false) {}

  void local(QubitId p, const Mat2& m) {
    pending_[p] = m * pending_[p];
    dirty_[p] = true;
  }

  void native_1q(GateKind k, QubitId p, double angle = 0.0) {
    if (dirty_[p]) {
      switch (k) {
        case GateKind::SX: local(p, gates::sx()); return;
        case GateKind::X: local(p, gates::pauli_x()); return;
        case GateKind::RZ: local(p, gates::rz(angle)); return;
        default: throw ValidationError("not a 1q native gate");
      }
    }
    if (k == GateKind::RZ)
      ops_.push_back(make_op(k, {p}, {angle}));
    else
      ops_.push_back(make_op(k, {p}));
  }

  /// Fixed-form gate inside an SU4 block; the qubit's run is known clean.
  void direct(GateKind k, QubitId p, double angle = 0.0) {
    if (dirty_[p]) throw std::logic_error("direct emission over pending run");
    if (k == GateKind::RZ)
      ops_.push_back(make_op(k, {p}, {angle}));
    else
      ops_.push_back(make_op(k, {p}));
  }

  void cx(QubitId a, QubitId b) {
    flush(a);
    flush(b);
    ops_.push_back(make_op(GateKind::CX, {a, b}));
  }

  /// Bare SWAP as a CX triple. Pending single-qubit factors ride along with
  /// the exchanged states (SWAP (P ox Q) = (Q ox P) SWAP), so nothing is
  /// flushed and the runs merge into whatever touches the wires next.
  void swap(QubitId a, QubitId b) {
    ops_.push_back(make_op(GateKind::CX, {a, b}));
    ops_.push_back(make_op(GateKind::CX, {b, a}));
    ops_.push_back(make_op(GateKind::CX, {a, b}));
    std::swap(pending_[a], pending_[b]);
    const bool da = dirty_[a];
    dirty_[a] = dirty_[b];
    dirty_[b] = da;
  }

  void barrier(std::vector<QubitId> qubits) {
    for (QubitId q : qubits) flush(q);
    ops_.push_back(make_op(GateKind::Barrier, std::move(qubits)));
  }

  void measure(QubitId p, QubitId clbit) {
    flush(p);
    ops_.push_back(make_op(GateKind::Measure, {p}, {double(clbit)}));
  }

  void flush(QubitId p) {
    if (!dirty_[p]) return;
    const EulerAngles e = euler_zyz(pending_[p]);
    ops_.push_back(make_op(GateKind::RZ, {p}, {e.lam}));
    ops_.push_back(make_op(GateKind::SX, {p}));
    ops_.push_back(make_op(GateKind::RZ, {p}, {e.theta + kTau / 2}));
    ops_.push_back(make_op(GateKind::SX, {p}));
    ops_.push_back(make_op(GateKind::RZ, {p}, {e.phi + kTau / 2}));
    pending_[p] = Mat2::Identity();
    dirty_[p] = false;
  }

  void flush_all() {
    for (QubitId p = 0; p < pending_.size(); ++p) flush(p);
  }

  std::vector<GateOp> take() { return std::move(ops_); }

 private:
  std::vector<Mat2> pending_;
  std::vector<bool> dirty_;
  std::vector<GateOp> ops_;
};

/// Emit one KAK'd two-qubit unitary on adjacent physical qubits (pa = low
/// matrix index). Three CX with fixed-shape single-qubit runs between them:
///
///   [k2 runs]  CX  [RZ.SX.RZ.SX | RZ.SX.RZ]  CX  [SX.RZ.SX.RZ | RZ.SX.RZ]
///   CX  [k1 runs merge into the next block]
inline void emit_su4_block(NativeEmitter& em, const KakDecomposition& k,
                           QubitId pa, QubitId pb) {
  const double half_pi = kTau / 4;
  em.local(pa, k.k2_low);
  em.local(pb, k.k2_high);
  em.cx(pa, pb);
  // exp(i pi/4 Z) exp(i a X) on pa; H exp(i(pi/4+c) Z) on pb.
  em.direct(GateKind::RZ, pa, half_pi);
  em.direct(GateKind::SX, pa);
  em.direct(GateKind::RZ, pa, 2 * half_pi - 2 * k.a);
  em.direct(GateKind::SX, pa);
  em.direct(GateKind::RZ, pb, -2 * k.c);
  em.direct(GateKind::SX, pb);
  em.direct(GateKind::RZ, pb, half_pi);
  em.cx(pa, pb);
  // exp(i b X) S^dag on pa; H on pb.
  em.direct(GateKind::SX, pa);
  em.direct(GateKind::RZ, pa, 2 * half_pi - 2 * k.b);
  em.direct(GateKind::SX, pa);
  em.direct(GateKind::RZ, pa, half_pi);
  em.direct(GateKind::RZ, pb, half_pi);
  em.direct(GateKind::SX, pb);
  em.direct(GateKind::RZ, pb, half_pi);
  em.cx(pa, pb);
  // Trailing frame: (S ox S) then the K1 locals, left pending.
  Mat2 s_gate = Mat2::Zero();
  s_gate(0, 0) = 1;
  s_gate(1, 1) = cd(0, 1);
  em.local(pa, s_gate);
  em.local(pa, k.k1_low);
  em.local(pb, s_gate);
  em.local(pb, k.k1_high);
}

/// One joint placement of disjoint 2q-gate pairs onto adjacent line slots.
struct LinePlacement {
  std::vector<QubitId> target_pos;  // per wire; unassigned = own position
  int rounds = 0;
  int swaps = 0;
};

/// Odd-even transposition schedule that realizes `target of each position`;
/// returns (rounds, swaps) and optionally reports the swap list in position
/// space.
inline std::pair<int, int> odd_even_schedule(std::vector<QubitId> dest,
                                             std::vector<std::pair<QubitId, QubitId>>* out) {
  const QubitId n = static_cast<QubitId>(dest.size());
  int rounds = 0, swaps = 0;
  for (QubitId round = 0; round < n; ++round) {
    if (std::is_sorted(dest.begin(), dest.end())) break;
    bool any = false;
    for (QubitId i = round % 2; i + 1 < n; i += 2)
      if (dest[i] > dest[i + 1]) {
        std::swap(dest[i], dest[i + 1]);
        if (out) out->emplace_back(i, i + 1);
        ++swaps;
        any = true;
      }
    if (any) ++rounds;
  }
  return {rounds, swaps};
}

/// Structural peephole: merge adjacent same-qubit RZ pairs, cancel adjacent
/// identical CX pairs. Decisions depend only on op kinds and wiring, never
/// on angle values.
inline void peephole(std::vector<GateOp>& ops, QubitId num_phys) {
  std::vector<GateOp> out;
  std::vector<int> last(num_phys, -1);
  const auto recompute_last = [&](QubitId q) {
    last[q] = -1;
    for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
      const auto& qs = out[i].qubits;
      if (std::find(qs.begin(), qs.end(), q) != qs.end()) {
        last[q] = i;
        break;
      }
    }
  };
  for (auto& op : ops) {
    if (op.kind == GateKind::RZ) {
      const QubitId q = op.qubits[0];
      if (last[q] >= 0 && out[last[q]].kind == GateKind::RZ) {
        out[last[q]].params[0] += op.params[0];
        continue;
      }
    }
    if (op.kind == GateKind::CX) {
      const QubitId a = op.qubits[0], b = op.qubits[1];
      if (last[a] >= 0 && last[a] == last[b] &&
          out[last[a]].kind == GateKind::CX && out[last[a]].qubits == op.qubits) {
        const int erased = last[a];
        out.erase(out.begin() + erased);
        // Reindex the last-op table across the erased slot.
        for (auto& idx : last)
          if (idx > erased) --idx;
        recompute_last(a);
        recompute_last(b);
        continue;
      }
    }
    for (QubitId q : op.qubits) last[q] = static_cast<int>(out.size());
    out.push_back(std::move(op));
  }
  ops = std::move(out);
}

}  // namespace detail

/// SU(4) to native gates on qubits (0, 1): exactly 3 CX plus single-qubit
/// RZ/SX layers; the composed matrix equals the input up to global phase.
inline std::vector<GateOp> decompose_su4(const Mat4& u) {
  const KakDecomposition k = kak_decompose(u);
  detail::NativeEmitter em(2);
  detail::emit_su4_block(em, k, 0, 1);
  em.flush_all();
  return em.take();
}

inline std::vector<GateOp> decompose_su4(const std::vector<double>& angles) {
  return decompose_su4(su4_from_params(angles));
}

/// Realize a full permutation of physical qubits as SWAPs (each emitted as 3
/// CX): odd-even transposition on line topologies, leaf-settling over a BFS
/// spanning tree on anything else. perm[p] is the destination of the state
/// at p; perm must cover every qubit of the map.
inline std::vector<GateOp> route_permutation(const std::vector<QubitId>& perm,
                                             const CouplingMap& cmap) {
  const QubitId n = cmap.num_qubits();
  if (perm.size() != n) throw ParameterError("permutation size mismatch");
  {
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (QubitId q = 0; q < n; ++q)
      if (sorted[q] != q) throw ParameterError("not a permutation of the map");
  }
  detail::NativeEmitter em(n);

  const auto order = cmap.line_order();
  if (!order.empty()) {
    std::vector<QubitId> pos_of(n);
    for (QubitId i = 0; i < n; ++i) pos_of[order[i]] = i;
    // dest[i]: target position of the state currently at position i.
    std::vector<QubitId> dest(n);
    for (QubitId i = 0; i < n; ++i) dest[i] = pos_of[perm[order[i]]];
    for (QubitId round = 0; round < n; ++round) {
      bool any = false;
      for (QubitId i = round % 2; i + 1 < n; i += 2)
        if (dest[i] > dest[i + 1]) {
          std::swap(dest[i], dest[i + 1]);
          em.swap(order[i], order[i + 1]);
          any = true;
        }
      if (!any && std::is_sorted(dest.begin(), dest.end())) break;
    }
  } else {
    // Spanning tree by BFS; settle leaves innermost-last so finished qubits
    // are never disturbed again.
    std::vector<std::vector<QubitId>> tree(n);
    {
      std::vector<bool> seen(n, false);
      std::deque<QubitId> queue{0};
      seen[0] = true;
      while (!queue.empty()) {
        const QubitId cur = queue.front();
        queue.pop_front();
        for (QubitId nxt : cmap.neighbors(cur))
          if (!seen[nxt]) {
            seen[nxt] = true;
            tree[cur].push_back(nxt);
            tree[nxt].push_back(cur);
            queue.push_back(nxt);
          }
      }
    }
    std::vector<QubitId> state_at(n);  // original position of the state at p
    std::iota(state_at.begin(), state_at.end(), 0);
    std::vector<QubitId> where(n);  // current position of state originally at o
    std::iota(where.begin(), where.end(), 0);
    std::vector<bool> alive(n, true);
    std::vector<QubitId> inv(n);
    for (QubitId p = 0; p < n; ++p) inv[perm[p]] = p;

    for (QubitId settled = 0; settled + 1 < n; ++settled) {
      // Smallest-index leaf of the remaining tree.
      QubitId leaf = n;
      for (QubitId q = 0; q < n && leaf == n; ++q) {
        if (!alive[q]) continue;
        int deg = 0;
        for (QubitId t : tree[q]) deg += alive[t] ? 1 : 0;
        if (deg <= 1) leaf = q;
      }
      const QubitId origin = inv[leaf];  // state that must end at this leaf
      // Path from the state's position to the leaf inside the alive tree.
      std::vector<int> prev(n, -1);
      std::deque<QubitId> queue{where[origin]};
      std::vector<bool> seen(n, false);
      seen[where[origin]] = true;
      while (!queue.empty()) {
        const QubitId cur = queue.front();
        queue.pop_front();
        if (cur == leaf) break;
        for (QubitId nxt : tree[cur])
          if (alive[nxt] && !seen[nxt]) {
            seen[nxt] = true;
            prev[nxt] = static_cast<int>(cur);
            queue.push_back(nxt);
          }
      }
      std::vector<QubitId> path{leaf};
      while (path.back() != where[origin])
        path.push_back(static_cast<QubitId>(prev[path.back()]));
      std::reverse(path.begin(), path.end());
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        em.swap(path[i], path[i + 1]);
        std::swap(state_at[path[i]], state_at[path[i + 1]]);
        where[state_at[path[i]]] = path[i];
        where[state_at[path[i + 1]]] = path[i + 1];
      }
      alive[leaf] = false;
    }
  }
  return em.take();
}

/// Offline compilation: permutations fold into a floating layout, SU(4)s
/// lower to 3-CX KAK blocks, non-adjacent two-qubit gates pull their
/// operands together with SWAP chains. On line topologies a whole layer of
/// disjoint SU(4)s is placed jointly, realized with parallel odd-even swap
/// rounds. Semantics are preserved up to global phase and the final layout
/// relabeling.
inline NativeCircuit transpile(const Circuit& c, const CouplingMap& cmap) {
  if (c.width > cmap.num_qubits())
    throw CapacityError("circuit is wider than the coupling map");
  c.validate();
  const QubitId n = cmap.num_qubits();

  std::vector<QubitId> layout(c.width);  // wire -> physical qubit
  std::iota(layout.begin(), layout.end(), 0);
  std::vector<QubitId> wire_at(n, QubitId(-1));  // physical -> wire
  for (QubitId w = 0; w < c.width; ++w) wire_at[w] = w;

  detail::NativeEmitter em(n);

  const auto swap_phys = [&](QubitId p, QubitId q) {
    em.swap(p, q);
    const QubitId wp = wire_at[p], wq = wire_at[q];
    std::swap(wire_at[p], wire_at[q]);
    if (wp != QubitId(-1)) layout[wp] = q;
    if (wq != QubitId(-1)) layout[wq] = p;
  };

  // Walk both endpoints toward each other; the two swap chains sit on
  // disjoint edges, so each round costs one swap of depth, not two.
  const auto make_adjacent = [&](QubitId wa, QubitId wb) {
    while (true) {
      const auto path = cmap.shortest_path(layout[wa], layout[wb]);
      if (path.size() <= 2) break;
      swap_phys(path[0], path[1]);
      if (path.size() >= 4) swap_phys(path[path.size() - 1], path[path.size() - 2]);
    }
  };

  const auto emit_su4_op = [&](const GateOp& op) {
    const Mat4 u = op.params.size() == 15 ? su4_from_params(op.params)
                                          : su4_op_matrix_payload(op);
    detail::emit_su4_block(em, kak_decompose(u), layout[op.qubits[0]],
                           layout[op.qubits[1]]);
  };

  const auto line = cmap.line_order();
  std::vector<QubitId> pos_of(n);
  for (QubitId i = 0; i < static_cast<QubitId>(line.size()); ++i)
    pos_of[line[i]] = i;

  // Joint placement of a layer of disjoint SU4 pairs on a line: enumerate
  // every assignment of pairs to adjacent slot pairs, schedule each with
  // odd-even transposition, keep the shallowest. Exhaustive up to 4 pairs.
  const auto route_su4_group = [&](const std::vector<const GateOp*>& group) {
    const int k = static_cast<int>(group.size());
    // Candidate slots stay inside the bounding interval of the pairs'
    // current positions (moving outward never reduces swap rounds); this
    // keeps the enumeration small on wide devices.
    QubitId lo = n, hi = 0;
    for (const auto* op : group)
      for (const QubitId w : op->qubits) {
        const QubitId p = pos_of[layout[w]];
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
    const QubitId slot_min = lo > 1 ? lo - 1 : 0;
    const QubitId slot_max = std::min<QubitId>(hi, n - 2);
    std::vector<QubitId> slot_starts;
    std::vector<std::vector<QubitId>> slot_sets;
    const std::function<void(QubitId)> enumerate_slots = [&](QubitId from) {
      if (static_cast<int>(slot_starts.size()) == k) {
        slot_sets.push_back(slot_starts);
        return;
      }
      for (QubitId s = from; s <= slot_max; ++s) {
        slot_starts.push_back(s);
        enumerate_slots(s + 2);
        slot_starts.pop_back();
      }
    };
    enumerate_slots(slot_min);

    std::vector<int> pair_order(k);
    std::iota(pair_order.begin(), pair_order.end(), 0);
    int best_rounds = std::numeric_limits<int>::max();
    int best_swaps = std::numeric_limits<int>::max();
    std::vector<QubitId> best_dest;

    std::vector<QubitId> dest(n);
    do {
      for (const auto& slots : slot_sets) {
        for (int orient_mask = 0; orient_mask < (1 << k); ++orient_mask) {
          // dest[position] = target position of the state currently there.
          std::vector<bool> taken(n, false);
          for (QubitId p = 0; p < n; ++p) dest[p] = n;  // unset
          bool ok = true;
          for (int g = 0; g < k && ok; ++g) {
            const GateOp& op = *group[pair_order[g]];
            QubitId wa = op.qubits[0], wb = op.qubits[1];
            if ((orient_mask >> g) & 1) std::swap(wa, wb);
            const QubitId pa = pos_of[layout[wa]], pb = pos_of[layout[wb]];
            if (dest[pa] != n || dest[pb] != n) {
              ok = false;
              break;
            }
            dest[pa] = slots[g];
            dest[pb] = slots[g] + 1;
            taken[slots[g]] = taken[slots[g] + 1] = true;
          }
          if (!ok) continue;
          // Leftover states flow to leftover positions in order (sorted
          // matching adds no crossings of its own).
          std::vector<QubitId> free_pos;
          for (QubitId p = 0; p < n; ++p)
            if (!taken[p]) free_pos.push_back(p);
          std::size_t cursor = 0;
          for (QubitId p = 0; p < n; ++p)
            if (dest[p] == n) dest[p] = free_pos[cursor++];

          const auto [rounds, swaps] = detail::odd_even_schedule(dest, nullptr);
          if (rounds < best_rounds ||
              (rounds == best_rounds && swaps < best_swaps)) {
            best_rounds = rounds;
            best_swaps = swaps;
            best_dest = dest;
          }
        }
      }
    } while (std::next_permutation(pair_order.begin(), pair_order.end()));

    if (best_dest.empty()) {
      // No joint placement found; route pairs one at a time.
      for (const auto* op : group) {
        make_adjacent(op->qubits[0], op->qubits[1]);
        emit_su4_op(*op);
      }
      return;
    }
    std::vector<std::pair<QubitId, QubitId>> plan;
    detail::odd_even_schedule(best_dest, &plan);
    for (const auto& [i, j] : plan) swap_phys(line[i], line[j]);
    for (const auto* op : group) emit_su4_op(*op);
  };

  for (std::size_t idx = 0; idx < c.ops.size();) {
    const auto& op = c.ops[idx];
    if (op.kind == GateKind::SU4 && !line.empty()) {
      std::vector<const GateOp*> group;
      std::vector<bool> used(c.width, false);
      std::size_t j = idx;
      for (; j < c.ops.size(); ++j) {
        const auto& g = c.ops[j];
        if (g.kind != GateKind::SU4 || used[g.qubits[0]] || used[g.qubits[1]])
          break;
        used[g.qubits[0]] = used[g.qubits[1]] = true;
        group.push_back(&g);
      }
      if (group.size() <= 4) {
        route_su4_group(group);
        idx = j;
        continue;
      }
    }
    switch (op.kind) {
      case GateKind::Perm: {
        const auto dest = perm_destinations(op);
        auto old = layout;
        for (std::size_t k = 0; k < op.qubits.size(); ++k)
          layout[dest[k]] = old[op.qubits[k]];
        for (QubitId w = 0; w < c.width; ++w) wire_at[layout[w]] = w;
        break;
      }
      case GateKind::SU4:
        make_adjacent(op.qubits[0], op.qubits[1]);
        emit_su4_op(op);
        break;
      case GateKind::CX:
        make_adjacent(op.qubits[0], op.qubits[1]);
        em.cx(layout[op.qubits[0]], layout[op.qubits[1]]);
        break;
      case GateKind::SX:
      case GateKind::X:
        em.native_1q(op.kind, layout[op.qubits[0]]);
        break;
      case GateKind::RZ:
        em.native_1q(op.kind, layout[op.qubits[0]], op.params[0]);
        break;
      case GateKind::Barrier: {
        std::vector<QubitId> qs;
        qs.reserve(op.qubits.size());
        for (QubitId w : op.qubits) qs.push_back(layout[w]);
        em.barrier(std::move(qs));
        break;
      }
      case GateKind::Measure:
        em.measure(layout[op.qubits[0]], op.measure_clbit());
        break;
    }
    ++idx;
  }
  em.flush_all();
  auto ops = em.take();
  detail::peephole(ops, n);

  NativeCircuit nc;
  nc.circuit.width = n;
  nc.circuit.num_clbits = c.num_clbits ? c.num_clbits : c.width;
  nc.circuit.ops = std::move(ops);
  nc.layout = std::move(layout);
  return nc;
}

/// Throws unless the circuit is native-only with every CX on a coupling edge.
inline void validate_native(const NativeCircuit& nc, const CouplingMap& cmap) {
  nc.circuit.validate();
  for (const auto& op : nc.circuit.ops) {
    if (!op.is_native()) throw ValidationError("non-native op in NativeCircuit");
    if (op.kind == GateKind::CX && !cmap.has_edge(op.qubits[0], op.qubits[1]))
      throw ValidationError("cx off the coupling map");
  }
}

/// Depth report under the box-placement rules: 1q gates, measurements and
/// resets occupy one unit; a 2q gate is one unit behind an implicit barrier
/// on its pair; barriers are free but synchronize their qubits.
struct DepthReport {
  int depth = 0;
  std::vector<int> per_qubit;
};

inline DepthReport depth(const Circuit& native) {
  std::vector<int> d(native.width, 0);
  for (const auto& op : native.ops) {
    switch (op.kind) {
      case GateKind::SX:
      case GateKind::X:
      case GateKind::RZ:
      case GateKind::Measure:
        d[op.qubits[0]] += 1;
        break;
      case GateKind::CX: {
        const int sync = std::max(d[op.qubits[0]], d[op.qubits[1]]);
        d[op.qubits[0]] = d[op.qubits[1]] = sync + 1;
        break;
      }
      case GateKind::Barrier: {
        int sync = 0;
        for (QubitId q : op.qubits) sync = std::max(sync, d[q]);
        for (QubitId q : op.qubits) d[q] = sync;
        break;
      }
      default:
        throw ValidationError("depth is defined on native circuits only");
    }
  }
  DepthReport r;
  r.per_qubit = std::move(d);
  r.depth = r.per_qubit.empty()
                ? 0
                : *std::max_element(r.per_qubit.begin(), r.per_qubit.end());
  return r;
}

inline DepthReport depth(const NativeCircuit& nc) { return depth(nc.circuit); }

/// Mean native depth of the templates once transpiled; parameter binding
/// cannot change it, so an all-zeros binding stands in for any instance.
inline double average_template_depth(const std::vector<QVTemplate>& templates,
                                     const CouplingMap& cmap) {
  if (templates.empty()) throw ParameterError("no templates");
  double acc = 0;
  for (const auto& t : templates) {
    const Circuit bound = bind_parameters(t, ParameterVector(t.param_count(), 0.0));
    acc += depth(transpile(bound, cmap)).depth;
  }
  return acc / static_cast<double>(templates.size());
}

}  // namespace qperf

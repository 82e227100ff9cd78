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

#include "oracles.hpp"
#include "qperf/statevector.hpp"
#include "qperf/transpiler.hpp"

using namespace qperf;

namespace {

Mat4 gate_list_matrix(const std::vector<GateOp>& ops) {
  Circuit c;
  c.width = 2;
  c.ops = ops;
  const auto m = testing::dense_circuit_matrix(c);
  Mat4 out;
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col) out(r, col) = m(r, col);
  return out;
}

int count_kind(const std::vector<GateOp>& ops, GateKind k) {
  int n = 0;
  for (const auto& op : ops) n += op.kind == k ? 1 : 0;
  return n;
}

/// Map a transpiled statevector back to the abstract wire order; requires
/// all non-wire physical qubits to be in |0>.
Statevector undo_layout(const Statevector& native,
                        const std::vector<QubitId>& layout, QubitId width) {
  Statevector out;
  out.width = width;
  out.amps.assign(std::size_t{1} << width, cd(0, 0));
  std::uint64_t wire_mask = 0;
  for (QubitId w = 0; w < width; ++w) wire_mask |= std::uint64_t{1} << layout[w];
  for (std::uint64_t j = 0; j < native.amps.size(); ++j) {
    if ((j & ~wire_mask) != 0) {
      REQUIRE(std::abs(native.amps[j]) < 1e-9);
      continue;
    }
    std::uint64_t i = 0;
    for (QubitId w = 0; w < width; ++w)
      if ((j >> layout[w]) & 1) i |= std::uint64_t{1} << w;
    out.amps[i] = native.amps[j];
  }
  return out;
}

double state_phase_distance(const Statevector& a, const Statevector& b) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < a.amps.size(); ++i)
    if (std::abs(a.amps[i]) > std::abs(a.amps[pivot])) pivot = i;
  cd phase = a.amps[pivot] / b.amps[pivot];
  phase /= std::abs(phase);
  double err = 0;
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    err = std::max(err, std::abs(a.amps[i] - phase * b.amps[i]));
  return err;
}

Circuit random_abstract_circuit(QubitId width, int ops, SplitMix64& rng) {
  Circuit c;
  c.width = width;
  for (int i = 0; i < ops; ++i) {
    switch (rng.next_below(6)) {
      case 0:
        c.add(make_op(GateKind::SX, {QubitId(rng.next_below(width))}));
        break;
      case 1:
        c.add(make_op(GateKind::X, {QubitId(rng.next_below(width))}));
        break;
      case 2:
        c.add(make_op(GateKind::RZ, {QubitId(rng.next_below(width))},
                      {rng.next_angle()}));
        break;
      case 3: {
        const auto a = QubitId(rng.next_below(width));
        auto b = QubitId(rng.next_below(width));
        while (b == a) b = QubitId(rng.next_below(width));
        c.add(make_op(GateKind::CX, {a, b}));
        break;
      }
      case 4: {
        const auto a = QubitId(rng.next_below(width));
        auto b = QubitId(rng.next_below(width));
        while (b == a) b = QubitId(rng.next_below(width));
        std::vector<double> angles(15);
        for (auto& v : angles) v = rng.next_angle();
        c.add(make_op(GateKind::SU4, {a, b}, std::move(angles)));
        break;
      }
      default: {
        std::vector<QubitId> qs(width);
        std::iota(qs.begin(), qs.end(), 0);
        auto dest = qs;
        for (QubitId k = width - 1; k > 0; --k)
          std::swap(dest[k], dest[rng.next_below(k + 1)]);
        c.add(make_perm_op(qs, dest));
        break;
      }
    }
  }
  return c;
}

/// Bit-level oracle: push every computational basis state through the CX
/// list and check the resulting bit permutation equals perm.
void check_permutation_realized(const std::vector<GateOp>& ops,
                                const std::vector<QubitId>& perm,
                                const CouplingMap& cmap) {
  const QubitId n = cmap.num_qubits();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::vector<int> bits(n);
    for (QubitId q = 0; q < n; ++q) bits[q] = (x >> q) & 1;
    for (const auto& op : ops) {
      REQUIRE(op.kind == GateKind::CX);
      REQUIRE(cmap.has_edge(op.qubits[0], op.qubits[1]));
      bits[op.qubits[1]] ^= bits[op.qubits[0]];
    }
    for (QubitId q = 0; q < n; ++q) REQUIRE(bits[perm[q]] == int((x >> q) & 1));
  }
}

}  // namespace

TEST_CASE("decompose_su4 reconstructs the identity", "[transpiler]") {
  const Mat4 eye = Mat4::Identity();
  const auto ops = decompose_su4(eye);
  CHECK(count_kind(ops, GateKind::CX) == 3);
  CHECK(phase_aligned_distance(eye, gate_list_matrix(ops)) < 1e-9);
}

TEST_CASE("decompose_su4 reconstructs CX", "[transpiler]") {
  const auto ops = decompose_su4(gates::cx_01());
  CHECK(phase_aligned_distance(gates::cx_01(), gate_list_matrix(ops)) < 1e-9);
}

TEST_CASE("decompose_su4 rejects non-unitary input", "[transpiler]") {
  Mat4 bad = Mat4::Identity() * 1.5;
  CHECK_THROWS_AS(decompose_su4(bad), ValidationError);
}

TEST_CASE("decompose_su4 handles pure interactions", "[transpiler]") {
  SplitMix64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const Mat4 canonical = canonical_interaction(
        rng.next_angle(), rng.next_angle(), rng.next_angle());
    const auto ops = decompose_su4(canonical);
    CHECK(phase_aligned_distance(canonical, gate_list_matrix(ops)) < 1e-9);
  }
}

TEST_CASE("decompose_su4 emits 3 CX and RZ/SX layers for Haar unitaries",
          "[transpiler]") {
  SplitMix64 rng(18);
  double worst = 0;
  for (int i = 0; i < 300; ++i) {
    const Mat4 u = random_su4_haar(rng);
    const auto ops = decompose_su4(u);
    REQUIRE(count_kind(ops, GateKind::CX) == 3);
    for (const auto& op : ops) {
      const bool allowed = op.kind == GateKind::CX || op.kind == GateKind::RZ ||
                           op.kind == GateKind::SX;
      REQUIRE(allowed);
    }
    worst = std::max(worst, phase_aligned_distance(u, gate_list_matrix(ops)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("decompose_su4 accepts 15-angle input", "[transpiler]") {
  SplitMix64 rng(19);
  std::vector<double> angles(15);
  for (auto& a : angles) a = rng.next_angle();
  const auto ops = decompose_su4(angles);
  CHECK(phase_aligned_distance(su4_from_params(angles), gate_list_matrix(ops)) <
        1e-8);
}

TEST_CASE("route_permutation: identity needs no swaps", "[transpiler]") {
  const auto cmap = CouplingMap::line(5);
  CHECK(route_permutation({0, 1, 2, 3, 4}, cmap).empty());
}

TEST_CASE("route_permutation: adjacent transposition is one swap",
          "[transpiler]") {
  const auto cmap = CouplingMap::line(5);
  const auto ops = route_permutation({0, 2, 1, 3, 4}, cmap);
  REQUIRE(ops.size() == 3);
  for (const auto& op : ops) {
    CHECK(op.kind == GateKind::CX);
    CHECK(cmap.has_edge(op.qubits[0], op.qubits[1]));
  }
}

TEST_CASE("route_permutation realizes all 120 permutations on a 5-line",
          "[transpiler]") {
  const auto cmap = CouplingMap::line(5);
  std::vector<QubitId> perm{0, 1, 2, 3, 4};
  do {
    check_permutation_realized(route_permutation(perm, cmap), perm, cmap);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("route_permutation falls back to tree routing on non-lines",
          "[transpiler]") {
  // Star: everything through qubit 0.
  const CouplingMap star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  std::vector<QubitId> perm{0, 1, 2, 3, 4};
  do {
    check_permutation_realized(route_permutation(perm, star), perm, star);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("route_permutation rejects non-permutations", "[transpiler]") {
  const auto cmap = CouplingMap::line(3);
  CHECK_THROWS_AS(route_permutation({0, 0, 1}, cmap), ParameterError);
  CHECK_THROWS_AS(route_permutation({0, 1}, cmap), ParameterError);
}

TEST_CASE("transpiled QV circuits are native and on-edge", "[transpiler]") {
  const auto cmap = CouplingMap::line(5);
  const auto templates = generate_qv_templates(5, 5, 3, 11);
  SplitMix64 rng(1);
  for (const auto& tpl : templates) {
    ParameterVector theta(tpl.param_count());
    for (auto& v : theta) v = rng.next_angle();
    const NativeCircuit nc = transpile(bind_parameters(tpl, theta), cmap);
    validate_native(nc, cmap);
    CHECK(count_kind(nc.circuit.ops, GateKind::Measure) == 5);
  }
}

TEST_CASE("transpile preserves semantics up to layout and phase",
          "[transpiler]") {
  SplitMix64 rng(2222);
  for (int trial = 0; trial < 40; ++trial) {
    const QubitId width = QubitId(2 + rng.next_below(5));
    Circuit c = random_abstract_circuit(width, 14, rng);
    const auto cmap = CouplingMap::line(width);
    const NativeCircuit nc = transpile(c, cmap);
    validate_native(nc, cmap);
    const Statevector expect = simulate(c);
    const Statevector got = undo_layout(simulate(nc.circuit), nc.layout, width);
    REQUIRE(state_phase_distance(expect, got) < 1e-8);
  }
}

TEST_CASE("transpile on a star coupling map routes 2q gates", "[transpiler]") {
  const CouplingMap star(4, {{0, 1}, {0, 2}, {0, 3}});
  SplitMix64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    Circuit c = random_abstract_circuit(4, 10, rng);
    const NativeCircuit nc = transpile(c, star);
    validate_native(nc, star);
    const Statevector expect = simulate(c);
    const Statevector got = undo_layout(simulate(nc.circuit), nc.layout, 4);
    REQUIRE(state_phase_distance(expect, got) < 1e-8);
  }
}

TEST_CASE("identity circuit transpiles to bare measurements", "[transpiler]") {
  Circuit c;
  c.width = 3;
  for (QubitId q = 0; q < 3; ++q) c.add(make_op(GateKind::Measure, {q}));
  const NativeCircuit nc = transpile(c, CouplingMap::line(3));
  CHECK(nc.circuit.ops.size() == 3);
  for (const auto& op : nc.circuit.ops) CHECK(op.kind == GateKind::Measure);
}

TEST_CASE("simulating PERM equals its routed SWAP expansion", "[transpiler]") {
  SplitMix64 rng(99);
  const auto cmap = CouplingMap::line(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<QubitId> perm{0, 1, 2, 3, 4};
    for (QubitId i = 4; i > 0; --i)
      std::swap(perm[i], perm[rng.next_below(i + 1)]);

    Circuit with_perm = random_abstract_circuit(5, 4, rng);
    Circuit with_swaps = with_perm;
    std::vector<QubitId> all{0, 1, 2, 3, 4};
    with_perm.add(make_perm_op(all, perm));
    for (auto& op : route_permutation(perm, cmap)) with_swaps.add(std::move(op));

    const Statevector a = simulate(with_perm);
    const Statevector b = simulate(with_swaps);
    REQUIRE(state_phase_distance(a, b) < 1e-10);
  }
}

TEST_CASE("peephole CX cancellation keeps later runs intact", "[transpiler]") {
  // Regression: a cancelled CX pair used to leave the peephole's last-op
  // table stale, merging later RZ angles into the wrong gate.
  Circuit c;
  c.width = 4;
  c.add(make_op(GateKind::CX, {1, 3}));
  std::vector<double> angles(15);
  SplitMix64 rng(4242);
  for (auto& v : angles) v = rng.next_angle();
  c.add(make_op(GateKind::SU4, {2, 0}, angles));
  c.add(make_op(GateKind::CX, {1, 3}));
  const auto cmap = CouplingMap::line(4);
  const NativeCircuit nc = transpile(c, cmap);
  const Statevector expect = simulate(c);
  const Statevector got = undo_layout(simulate(nc.circuit), nc.layout, 4);
  CHECK(state_phase_distance(expect, got) < 1e-10);
}

TEST_CASE("transpile width overflow raises a capacity error", "[transpiler]") {
  Circuit c;
  c.width = 6;
  CHECK_THROWS_AS(transpile(c, CouplingMap::line(5)), CapacityError);
}

TEST_CASE("rebinding parameters never changes structure or depth",
          "[transpiler]") {
  const auto cmap = CouplingMap::line(5);
  const auto templates = generate_qv_templates(5, 5, 5, 77);
  SplitMix64 rng(3);
  for (const auto& tpl : templates) {
    ParameterVector t1(tpl.param_count()), t2(tpl.param_count());
    for (auto& v : t1) v = rng.next_angle();
    for (auto& v : t2) v = rng.next_angle();
    const NativeCircuit a = transpile(bind_parameters(tpl, t1), cmap);
    const NativeCircuit b = transpile(bind_parameters(tpl, t2), cmap);
    REQUIRE(a.circuit.ops.size() == b.circuit.ops.size());
    for (std::size_t i = 0; i < a.circuit.ops.size(); ++i) {
      CHECK(a.circuit.ops[i].kind == b.circuit.ops[i].kind);
      CHECK(a.circuit.ops[i].qubits == b.circuit.ops[i].qubits);
    }
    CHECK(depth(a).depth == depth(b).depth);
  }
}

TEST_CASE("average template depth is deterministic and plausible",
          "[transpiler]") {
  const auto cmap = CouplingMap::line(5);
  const auto templates = generate_qv_templates(5, 5, 20, 4242);
  const double d1 = average_template_depth(templates, cmap);
  const double d2 = average_template_depth(templates, cmap);
  CHECK(d1 == d2);
  CHECK(d1 > 85);
  CHECK(d1 < 115);
}

TEST_CASE("single-slot template depth is the block constant", "[transpiler]") {
  QVTemplate t;
  t.id = 0;
  t.width = 2;
  t.layers = 1;
  t.permutations = {{0, 1}};  // trivial
  const Circuit bound = bind_parameters(t, ParameterVector(15, 0.3));
  const NativeCircuit nc = transpile(bound, CouplingMap::line(2));
  // One KAK block (16 deep) + trailing local run (5) + measure (1).
  CHECK(depth(nc).depth == 22);
  CHECK(average_template_depth({t}, CouplingMap::line(2)) == 22.0);
}

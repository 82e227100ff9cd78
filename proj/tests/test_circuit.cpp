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

#include "qperf/circuit.hpp"

using namespace qperf;

TEST_CASE("circuit JSON uses the canonical field order", "[circuit]") {
  Circuit c;
  c.width = 2;
  c.add(make_op(GateKind::SX, {0}));
  c.add(make_op(GateKind::RZ, {1}, {1.5}));
  c.add(make_op(GateKind::CX, {0, 1}));
  const std::string s = c.canonical_json();
  CHECK(s.rfind("{\"width\":2,\"ops\":[", 0) == 0);
  CHECK(s.find("{\"name\":\"sx\",\"qubits\":[0],\"params\":[]}") != std::string::npos);
}

TEST_CASE("circuit JSON round trip is byte stable", "[circuit]") {
  Circuit c;
  c.width = 3;
  c.add(make_perm_op({0, 1, 2}, {2, 0, 1}));
  c.add(make_op(GateKind::SU4, {0, 1},
                std::vector<double>(15, 0.25)));
  c.add(make_op(GateKind::Measure, {0}, {0.0}));
  c.add(make_op(GateKind::Measure, {1}, {1.0}));
  const std::string once = c.canonical_json();
  const Circuit back = Circuit::from_json(json::parse(once));
  CHECK(back.canonical_json() == once);
}

TEST_CASE("validation rejects malformed ops", "[circuit]") {
  Circuit c;
  c.width = 2;

  SECTION("qubit out of range") {
    c.add(make_op(GateKind::X, {5}));
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }
  SECTION("rz without angle") {
    c.add(make_op(GateKind::RZ, {0}));
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }
  SECTION("cx on one qubit") {
    c.add(make_op(GateKind::CX, {1, 1}));
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }
  SECTION("su4 with wrong param count") {
    c.add(make_op(GateKind::SU4, {0, 1}, {1.0, 2.0}));
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }
  SECTION("perm that is not a permutation") {
    c.add(GateOp{GateKind::Perm, {0, 1}, {0.0, 0.0}});
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }
  SECTION("double measurement") {
    c.add(make_op(GateKind::Measure, {0}));
    c.add(make_op(GateKind::Measure, {0}));
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }
  SECTION("non-finite parameter") {
    c.add(make_op(GateKind::RZ, {0}, {std::nan("")}));
    CHECK_THROWS_AS(c.validate(), ValidationError);
  }
}

TEST_CASE("measure clbit defaults to the measured qubit", "[circuit]") {
  const GateOp with = make_op(GateKind::Measure, {3}, {1.0});
  const GateOp without = make_op(GateKind::Measure, {3});
  CHECK(with.measure_clbit() == 1);
  CHECK(without.measure_clbit() == 3);
}

TEST_CASE("su4 matrix payload round trips", "[circuit]") {
  Mat4 u = Mat4::Random();
  const GateOp op = make_su4_matrix_op(0, 1, u);
  REQUIRE(op.params.size() == 32);
  CHECK(max_abs((su4_op_matrix_payload(op) - u).eval()) == 0.0);
}

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

#include "qperf/qv_circuits.hpp"

using namespace qperf;

TEST_CASE("template generation shapes", "[qv]") {
  const auto templates = generate_qv_templates(5, 5, 100, 42);
  REQUIRE(templates.size() == 100);
  for (const auto& t : templates) {
    CHECK(t.width == 5);
    REQUIRE(t.permutations.size() == 5);
    for (const auto& p : t.permutations) {
      REQUIRE(p.size() == 5);
      auto sorted = p;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == std::vector<QubitId>{0, 1, 2, 3, 4});
    }
    CHECK(t.param_count() == 150);
  }

  const auto minimal = generate_qv_templates(2, 1, 1, 7);
  REQUIRE(minimal.size() == 1);
  CHECK(minimal[0].permutations.size() == 1);
  CHECK(minimal[0].permutations[0].size() == 2);
  CHECK(minimal[0].param_count() == 15);
}

TEST_CASE("template generation is a pure function of its inputs", "[qv]") {
  const auto a = generate_qv_templates(4, 4, 20, 123);
  const auto b = generate_qv_templates(4, 4, 20, 123);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].to_json().dump() == b[i].to_json().dump());
  const auto c = generate_qv_templates(4, 4, 20, 124);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    any_diff |= a[i].to_json().dump() != c[i].to_json().dump();
  CHECK(any_diff);
}

TEST_CASE("template generation rejects invalid dimensions", "[qv]") {
  CHECK_THROWS_AS(generate_qv_templates(1, 5, 100, 0), ParameterError);
  CHECK_THROWS_AS(generate_qv_templates(5, 0, 100, 0), ParameterError);
  CHECK_THROWS_AS(generate_qv_templates(5, 5, 0, 0), ParameterError);
}

TEST_CASE("binding produces the expected structure", "[qv]") {
  const auto t = generate_qv_templates(5, 5, 1, 9)[0];
  const ParameterVector theta(t.param_count(), 0.5);
  const Circuit c = bind_parameters(t, theta);
  int perms = 0, su4s = 0, measures = 0;
  for (const auto& op : c.ops) {
    if (op.kind == GateKind::Perm) {
      ++perms;
      CHECK(perm_destinations(op) == t.permutations[perms - 1]);
    }
    if (op.kind == GateKind::SU4) ++su4s;
    if (op.kind == GateKind::Measure) ++measures;
  }
  CHECK(perms == 5);
  CHECK(su4s == 10);
  CHECK(measures == 5);
  c.validate();
}

TEST_CASE("binding rejects wrong parameter length", "[qv]") {
  const auto t = generate_qv_templates(4, 4, 1, 1)[0];
  CHECK_THROWS_AS(bind_parameters(t, ParameterVector(7, 0.0)), ParameterError);
}

TEST_CASE("all-zero angles give the identity SU4", "[qv]") {
  // Each Euler local is SX*SX = X exactly, so (X ox X) I (X ox X) = I.
  const Mat4 u = su4_from_params(std::vector<double>(15, 0.0));
  CHECK(max_abs((u - Mat4::Identity()).eval()) < 1e-12);
}

TEST_CASE("su4_from_params is unitary for any angles", "[qv]") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> angles(15);
    for (auto& a : angles) a = rng.next_angle();
    CHECK(is_unitary(su4_from_params(angles), 1e-12));
  }
}

TEST_CASE("su4_from_params agrees with a direct product oracle", "[qv]") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> g(15);
    for (auto& a : g) a = rng.next_angle();

    // Independent construction: explicit matrices, opposite association.
    const auto local = [](double a1, double a2, double a3) {
      Mat2 m = gates::rz(a1);
      m = m * gates::sx();
      m = m * gates::rz(a2);
      m = m * gates::sx();
      m = m * gates::rz(a3);
      return m;
    };
    const Mat4 left = kron_q1q0(local(g[3], g[4], g[5]), local(g[0], g[1], g[2]));
    const Mat4 right = kron_q1q0(local(g[9], g[10], g[11]), local(g[6], g[7], g[8]));
    Mat4 mid = Mat4::Identity();
    const Mat4 xx = kron_q1q0(gates::pauli_x(), gates::pauli_x());
    const Mat4 yy = kron_q1q0(gates::pauli_y(), gates::pauli_y());
    const Mat4 zz = kron_q1q0(gates::pauli_z(), gates::pauli_z());
    mid = (std::cos(g[12]) * Mat4::Identity() + cd(0, std::sin(g[12])) * xx) * mid;
    mid = mid * (std::cos(g[13]) * Mat4::Identity() + cd(0, std::sin(g[13])) * yy);
    mid = mid * (std::cos(g[14]) * Mat4::Identity() + cd(0, std::sin(g[14])) * zz);
    const Mat4 expected = left * (mid * right);

    CHECK(max_abs((su4_from_params(g) - expected).eval()) < 1e-12);
  }
}

TEST_CASE("su4_from_params rejects bad input", "[qv]") {
  CHECK_THROWS_AS(su4_from_params(std::vector<double>(14, 0.0)), ParameterError);
  std::vector<double> bad(15, 0.0);
  bad[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(su4_from_params(bad), ParameterError);
}

TEST_CASE("haar samples are unitary and deterministic", "[qv]") {
  SplitMix64 a(5), b(5);
  const Mat4 ua = random_su4_haar(a);
  const Mat4 ub = random_su4_haar(b);
  CHECK(is_unitary(ua, 1e-10));
  CHECK(max_abs((ua - ub).eval()) == 0.0);
}

TEST_CASE("haar first moment: mean |tr U|^2 is 1", "[qv]") {
  SplitMix64 rng(31337);
  double acc = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const Mat4 u = random_su4_haar(rng);
    acc += std::norm(u.trace());
  }
  CHECK(acc / n == Catch::Approx(1.0).margin(0.05));
}

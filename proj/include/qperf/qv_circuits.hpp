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

#include <cstdint>
#include <vector>

#include "qperf/circuit.hpp"
#include "qperf/linalg.hpp"
#include "qperf/rng.hpp"

namespace qperf {

/// Width-N, D-layer circuit skeleton: permutations fixed at generation time,
/// SU(4) slots left as 15-angle placeholders. Layer L slot s acts on wires
/// (2s, 2s+1) and owns params [15*(L*floor(N/2)+s), +15).
struct QVTemplate {
  std::uint32_t id = 0;
  QubitId width = 0;
  std::uint32_t layers = 0;
  std::vector<std::vector<QubitId>> permutations;  // one per layer

  std::uint32_t pairs_per_layer() const { return width / 2; }
  std::size_t param_count() const {
    return std::size_t{15} * layers * pairs_per_layer();
  }

  json to_json() const {
    json j;
    j["id"] = id;
    j["width"] = width;
    j["layers"] = layers;
    j["permutations"] = permutations;
    return j;
  }
};

using ParameterVector = std::vector<double>;

/// Deterministic template generation: permutations by Fisher-Yates over a
/// single splitmix64 stream seeded with `seed`. Pure in (N, D, M, seed).
inline std::vector<QVTemplate> generate_qv_templates(QubitId width,
                                                     std::uint32_t layers,
                                                     std::uint32_t count,
                                                     std::uint64_t seed) {
  if (width < 2 || layers < 1 || count < 1)
    throw ParameterError("qv templates need width >= 2, layers >= 1, count >= 1");
  SplitMix64 rng(seed);
  std::vector<QVTemplate> templates;
  templates.reserve(count);
  for (std::uint32_t m = 0; m < count; ++m) {
    QVTemplate t;
    t.id = m;
    t.width = width;
    t.layers = layers;
    t.permutations.reserve(layers);
    for (std::uint32_t l = 0; l < layers; ++l) {
      std::vector<QubitId> perm(width);
      for (QubitId q = 0; q < width; ++q) perm[q] = q;
      for (QubitId i = width - 1; i > 0; --i) {
        const auto j = static_cast<QubitId>(rng.next_below(i + 1));
        std::swap(perm[i], perm[j]);
      }
      t.permutations.push_back(std::move(perm));
    }
    templates.push_back(std::move(t));
  }
  return templates;
}

/// Single-qubit unitary from 3 Euler angles in RZ.SX.RZ.SX.RZ form.
inline Mat2 euler_local(double alpha, double beta, double gamma) {
  return gates::rz(alpha) * gates::sx() * gates::rz(beta) * gates::sx() *
         gates::rz(gamma);
}

/// exp(i (a XX + b YY + c ZZ)): the terms commute and each Pauli squares to
/// the identity, so the exponential is a product of cos/sin terms.
inline Mat4 canonical_interaction(double a, double b, double c) {
  const Mat4 xx = kron_q1q0(gates::pauli_x(), gates::pauli_x());
  const Mat4 yy = kron_q1q0(gates::pauli_y(), gates::pauli_y());
  const Mat4 zz = kron_q1q0(gates::pauli_z(), gates::pauli_z());
  const Mat4 ea = std::cos(a) * Mat4::Identity() + cd(0, std::sin(a)) * xx;
  const Mat4 eb = std::cos(b) * Mat4::Identity() + cd(0, std::sin(b)) * yy;
  const Mat4 ec = std::cos(c) * Mat4::Identity() + cd(0, std::sin(c)) * zz;
  return ea * eb * ec;
}

/// Full SU(4) from 15 angles:
///   U = (A on qubits[0]) ox (B on qubits[1]) . exp(i(a XX + b YY + c ZZ))
///       . (C on qubits[0]) ox (D on qubits[1])
/// with A,B,C,D each from 3 Euler angles (params 0-11) and (a,b,c) the
/// interaction angles (params 12-14).
inline Mat4 su4_from_params(const std::vector<double>& angles) {
  if (angles.size() != 15) throw ParameterError("su4 takes exactly 15 angles");
  for (double a : angles)
    if (!std::isfinite(a)) throw ParameterError("non-finite su4 angle");
  const Mat2 a_post = euler_local(angles[0], angles[1], angles[2]);
  const Mat2 b_post = euler_local(angles[3], angles[4], angles[5]);
  const Mat2 c_pre = euler_local(angles[6], angles[7], angles[8]);
  const Mat2 d_pre = euler_local(angles[9], angles[10], angles[11]);
  const Mat4 mid = canonical_interaction(angles[12], angles[13], angles[14]);
  return kron_q0q1(a_post, b_post) * mid * kron_q0q1(c_pre, d_pre);
}

/// Haar-random 4x4 unitary: QR of a complex Ginibre matrix. Gram-Schmidt
/// fixes the QR gauge to a positive-real R diagonal, which is the phase
/// correction that makes Q exactly Haar-distributed.
inline Mat4 random_su4_haar(SplitMix64& rng) {
  Mat4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double re = rng.next_normal();
      const double im = rng.next_normal();
      g(r, c) = cd(re, im);
    }
  Mat4 q = Mat4::Zero();
  for (int c = 0; c < 4; ++c) {
    Eigen::Vector4cd v = g.col(c);
    for (int p = 0; p < c; ++p) v -= q.col(p).dot(v) * q.col(p);
    q.col(c) = v / v.norm();
  }
  return q;
}

/// Bind a parameter vector to a template: per layer one PERM op then
/// floor(N/2) parameterized SU4 ops on wires (0,1),(2,3),..., then a final
/// measurement of every qubit. Permutations are copied untouched.
inline Circuit bind_parameters(const QVTemplate& t, const ParameterVector& theta) {
  if (theta.size() != t.param_count())
    throw ParameterError("parameter vector length mismatch");
  for (double a : theta)
    if (!std::isfinite(a)) throw ParameterError("non-finite parameter");
  Circuit c;
  c.width = t.width;
  c.num_clbits = t.width;
  std::vector<QubitId> all(t.width);
  for (QubitId q = 0; q < t.width; ++q) all[q] = q;
  std::size_t cursor = 0;
  for (std::uint32_t l = 0; l < t.layers; ++l) {
    c.add(make_perm_op(all, t.permutations[l]));
    for (std::uint32_t s = 0; s < t.pairs_per_layer(); ++s) {
      std::vector<double> slice(theta.begin() + cursor,
                                theta.begin() + cursor + 15);
      cursor += 15;
      c.add(make_op(GateKind::SU4, {2 * s, 2 * s + 1}, std::move(slice)));
    }
  }
  for (QubitId q = 0; q < t.width; ++q)
    c.add(make_op(GateKind::Measure, {q}, {double(q)}));
  return c;
}

/// Square QV circuit with explicit Haar SU(4) matrices (the quality-protocol
/// form; parameter updates never touch these).
inline Circuit build_haar_qv_circuit(const QVTemplate& t, SplitMix64& rng) {
  Circuit c;
  c.width = t.width;
  c.num_clbits = t.width;
  std::vector<QubitId> all(t.width);
  for (QubitId q = 0; q < t.width; ++q) all[q] = q;
  for (std::uint32_t l = 0; l < t.layers; ++l) {
    c.add(make_perm_op(all, t.permutations[l]));
    for (std::uint32_t s = 0; s < t.pairs_per_layer(); ++s)
      c.add(make_su4_matrix_op(2 * s, 2 * s + 1, random_su4_haar(rng)));
  }
  for (QubitId q = 0; q < t.width; ++q)
    c.add(make_op(GateKind::Measure, {q}, {double(q)}));
  return c;
}

}  // namespace qperf

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

#include <Eigen/Dense>
#include <complex>

namespace qperf {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

namespace gates {

inline Mat2 identity2() { return Mat2::Identity(); }

inline Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 pauli_y() {
  Mat2 m;
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}

inline Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

/// sqrt(X): SX * SX == X exactly.
inline Mat2 sx() {
  Mat2 m;
  m << cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5);
  return m;
}

/// RZ(theta) = exp(-i theta Z / 2).
inline Mat2 rz(double theta) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(cd(0, -theta / 2));
  m(1, 1) = std::exp(cd(0, theta / 2));
  return m;
}

/// CX with control = qubit 0, target = qubit 1. Basis order |q1 q0>
/// numerically: amplitude index bit k is qubit k, so index = q0 + 2*q1.
inline Mat4 cx_01() {
  Mat4 m = Mat4::Zero();
  // q0 is the low bit of the index. Control q0: |x1 x0> -> |x1^x0, x0>.
  m(0, 0) = 1;  // 00 -> 00
  m(3, 1) = 1;  // 01 -> 11
  m(2, 2) = 1;  // 10 -> 10
  m(1, 3) = 1;  // 11 -> 01
  return m;
}

}  // namespace gates

/// Kronecker product placing `a` on qubit 1 (high bit) and `b` on qubit 0
/// (low bit): index = q0 + 2*q1, so (a ox b)[i,j] uses a for the high bits.
inline Mat4 kron_q1q0(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Kron with `a` acting on qubit 0 (low bit) and `b` on qubit 1.
inline Mat4 kron_q0q1(const Mat2& a, const Mat2& b) { return kron_q1q0(b, a); }

template <typename M>
double max_abs(const M& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename M>
bool is_unitary(const M& m, double tol) {
  return max_abs((m.adjoint() * m - M::Identity()).eval()) < tol;
}

/// Max elementwise distance between two matrices after aligning global phase
/// (phase taken from the largest element of `a`).
template <typename M>
double phase_aligned_distance(const M& a, const M& b) {
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < 1e-14 || std::abs(b(r, c)) < 1e-14)
    return max_abs((a - b).eval());
  cd phase = a(r, c) / b(r, c);
  phase /= std::abs(phase);
  return max_abs((a - phase * b).eval());
}

}  // namespace qperf

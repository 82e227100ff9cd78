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

#include <array>
#include <cmath>

#include "qperf/errors.hpp"
#include "qperf/linalg.hpp"
#include "qperf/rng.hpp"

namespace qperf {

/// Euler angles of a 1-qubit unitary in Z-Y-Z order:
///   V = e^{i alpha} RZ(phi) RY(theta) RZ(lam).
struct EulerAngles {
  double theta = 0, phi = 0, lam = 0;
};

inline EulerAngles euler_zyz(const Mat2& v) {
  // Strip the determinant so the SU(2) closed form applies.
  const cd det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
  const cd scale = std::sqrt(det);
  const Mat2 u = v / scale;
  EulerAngles e;
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(1, 0));
  e.theta = 2.0 * std::atan2(s, c);
  if (s < 1e-12) {
    e.phi = 2.0 * std::arg(u(1, 1));
    e.lam = 0.0;
  } else if (c < 1e-12) {
    e.phi = 2.0 * std::arg(u(1, 0));
    e.lam = 0.0;  // phi - lam fixed, phi + lam free
  } else {
    const double sum = 2.0 * std::arg(u(1, 1));
    const double diff = 2.0 * std::arg(u(1, 0));
    e.phi = 0.5 * (sum + diff);
    e.lam = 0.5 * (sum - diff);
  }
  return e;
}

/// Result of splitting a 2-qubit unitary into local and interaction parts:
///   U = phase . (k1_high ox k1_low) . exp(i(a XX + b YY + c ZZ))
///             . (k2_high ox k2_low)
/// where the "low" factor acts on the low bit of the 4-dim basis index.
struct KakDecomposition {
  double a = 0, b = 0, c = 0;
  Mat2 k1_low, k1_high, k2_low, k2_high;
  cd phase = cd(1, 0);
};

namespace detail {

/// Magic (Bell) basis columns: Phi+, i Phi-, i Psi+, Psi-. Conjugation by M
/// carries SU(2) ox SU(2) onto SO(4), and exp(i(aXX+bYY+cZZ)) is diagonal.
inline Mat4 magic_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4 m = Mat4::Zero();
  m(0, 0) = r;
  m(3, 0) = r;
  m(0, 1) = cd(0, r);
  m(3, 1) = cd(0, -r);
  m(1, 2) = cd(0, r);
  m(2, 2) = cd(0, r);
  m(1, 3) = r;
  m(2, 3) = -r;
  return m;
}

/// Factor a (numerically exact) tensor product K = g (k_high ox k_low) into
/// its 2x2 pieces, each normalized to unit determinant.
inline void kron_factor(const Mat4& k, cd& g, Mat2& k_low, Mat2& k_high) {
  Eigen::Index pi = 0, pj = 0;
  k.cwiseAbs().maxCoeff(&pi, &pj);
  const int p0 = static_cast<int>(pi) >> 1, r0 = static_cast<int>(pi) & 1;
  const int q0 = static_cast<int>(pj) >> 1, s0 = static_cast<int>(pj) & 1;
  Mat2 high, low;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) high(p, q) = k(2 * p + r0, 2 * q + s0);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) low(r, s) = k(2 * p0 + r, 2 * q0 + s);
  const cd pivot = k(pi, pj);
  // high ox low = pivot * K, so rescale one factor by 1/pivot.
  low /= pivot;
  const cd d_low = low(0, 0) * low(1, 1) - low(0, 1) * low(1, 0);
  const cd d_high = high(0, 0) * high(1, 1) - high(0, 1) * high(1, 0);
  const cd s_low = std::sqrt(d_low);
  const cd s_high = std::sqrt(d_high);
  k_low = low / s_low;
  k_high = high / s_high;
  g = s_low * s_high;
}

}  // namespace detail

/// Cartan (KAK) decomposition of an arbitrary 2-qubit unitary.
///
/// In the magic basis local gates become real orthogonal, so
/// Q = Up^T Up is a complex symmetric unitary whose real and imaginary
/// parts commute; a shared real eigenbasis P and the phases of
/// D = P^T Q P separate the interaction coefficients from the locals.
inline KakDecomposition kak_decompose(const Mat4& u_in) {
  if (!is_unitary(u_in, 1e-10))
    throw ValidationError("kak_decompose requires a unitary matrix");

  const cd det = u_in.determinant();
  const cd det_quarter = std::pow(det, 0.25);
  const Mat4 v = u_in / det_quarter;

  const Mat4 m = detail::magic_basis();
  const Mat4 up = m.adjoint() * v * m;
  const Mat4 q = up.transpose() * up;
  const Eigen::Matrix4d qr = q.real();
  const Eigen::Matrix4d qi = q.imag();

  // Shared eigenbasis of the commuting pair (Re Q, Im Q): diagonalize
  // Re Q + t Im Q for deterministic mixing weights until Q diagonalizes.
  static constexpr std::array<double, 6> kWeights = {1.0,  0.5,      0.25,
                                                     2.75, 0.121331, 7.5};
  Eigen::Matrix4d p = Eigen::Matrix4d::Identity();
  bool ok = false;
  for (const double t : kWeights) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(qr + t * qi);
    p = solver.eigenvectors();
    const Mat4 d_test = p.transpose().cast<cd>() * q * p.cast<cd>();
    double off = 0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (r != c) off = std::max(off, std::abs(d_test(r, c)));
    if (off < 1e-9) {
      ok = true;
      break;
    }
  }
  if (!ok) throw ValidationError("kak_decompose: eigenbasis search failed");
  if (p.determinant() < 0) p.col(0) = -p.col(0);

  const Mat4 d = p.transpose().cast<cd>() * q * p.cast<cd>();
  std::array<double, 4> theta{};
  for (int j = 0; j < 4; ++j) theta[j] = 0.5 * std::arg(d(j, j));

  // L = Up P D^{-1/2} is real orthogonal; a sign flip on one phase branch
  // restores det +1 when needed.
  const auto build_l = [&](const std::array<double, 4>& th) {
    Mat4 d_inv_sqrt = Mat4::Zero();
    for (int j = 0; j < 4; ++j) d_inv_sqrt(j, j) = std::exp(cd(0, -th[j]));
    return Mat4(up * p.cast<cd>() * d_inv_sqrt);
  };
  Mat4 l = build_l(theta);
  if (l.real().determinant() < 0) {
    theta[0] += kTau / 2;
    l = build_l(theta);
  }

  // Split the phases into a global part and the Bell-phase pattern of
  // exp(i(a XX + b YY + c ZZ)) in magic column order (F+, F-, P+, P-):
  //   (a-b+c, -a+b+c, a+b-c, -a-b-c).
  const double phase_sum = theta[0] + theta[1] + theta[2] + theta[3];
  std::array<double, 4> lam{};
  for (int j = 0; j < 4; ++j) lam[j] = theta[j] - phase_sum / 4;

  KakDecomposition out;
  out.a = 0.5 * (lam[0] + lam[2]);
  out.b = 0.5 * (lam[1] + lam[2]);
  out.c = 0.5 * (lam[0] + lam[1]);

  const Mat4 k1 = m * l * m.adjoint();
  const Mat4 k2 = m * p.transpose().cast<cd>() * m.adjoint();
  cd g1, g2;
  detail::kron_factor(k1, g1, out.k1_low, out.k1_high);
  detail::kron_factor(k2, g2, out.k2_low, out.k2_high);
  out.phase = det_quarter * std::exp(cd(0, phase_sum / 4)) * g1 * g2;
  return out;
}

}  // namespace qperf

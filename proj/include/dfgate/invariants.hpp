// Copyright 2026 The dfgate Authors
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

#include "dfgate/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace dfgate {

using Gate4 = Eigen::Matrix4cd;

inline Gate4 cz_gate() {
  Gate4 cz = Gate4::Identity();
  cz(3, 3) = -1.0;
  return cz;
}

/// Magic (Bell) basis change used for the local invariants.
inline Gate4 bell_matrix() {
  const double h = 1.0 / std::sqrt(2.0);
  Gate4 q;
  q << 1.0, 0.0, 0.0, kI,
       0.0, kI, 1.0, 0.0,
       0.0, kI, -1.0, 0.0,
       1.0, 0.0, 0.0, -kI;
  return h * q;
}

/// Q^dagger M Q.
inline Gate4 bell_basis_transform(const Gate4& m) {
  static const Gate4 q = bell_matrix();
  return q.adjoint() * m * q;
}

struct MakhlinPair {
  cplx m1;
  cplx m2;
};

/// Local-equivalence invariants:
///   m1 = (tr m)^2 / 16 * det(M^dagger)
///   m2 = ((tr m)^2 - tr(m^2)) / 4 * det(M^dagger)
/// with m = M_B^T M_B.
inline MakhlinPair makhlin_invariants(const Gate4& u) {
  const Gate4 mb = bell_basis_transform(u);
  const Gate4 m = mb.transpose() * mb;
  const cplx tr = m.trace();
  const cplx tr2 = (m * m).trace();
  const cplx det_dag = std::conj(u.determinant());
  return {tr * tr / 16.0 * det_dag, (tr * tr - tr2) / 4.0 * det_dag};
}

inline const MakhlinPair& cz_invariants() {
  static const MakhlinPair cz = makhlin_invariants(cz_gate());
  return cz;
}

/// Distance from the CZ local-equivalence class.
inline double fm_objective(const Gate4& u) {
  const MakhlinPair m = makhlin_invariants(u);
  const MakhlinPair& ref = cz_invariants();
  return std::abs(ref.m1 - m.m1) + std::abs(ref.m2 - m.m2);
}

class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Fixed frame mapping the noiseless logical gate onto CZ:
///   e^{i phase} V^dagger U V D = CZ,
/// with V the eigenbasis of the calibrated gate and D a diagonal phase
/// correction. D is product-form (a local Z rotation on each logical qubit)
/// because the calibrated gate's eigenvalues satisfy l00 l11 = -l01 l10.
struct LocalFrame {
  Gate4 v = Gate4::Identity();
  Eigen::Vector4cd correction = Eigen::Vector4cd::Ones();
  double phase = 0.0;

  Gate4 apply(const Gate4& u) const {
    return std::polar(1.0, phase) * (v.adjoint() * u * v) *
           correction.asDiagonal();
  }

  double residual(const Gate4& u0) const { return (apply(u0) - cz_gate()).norm(); }
};

struct CalibrationTolerances {
  double unitarity = 1e-10;
  double fm = 1e-8;
  double cross_ratio = 1e-6;
};

/// Calibrates a LocalFrame on a gate locally equivalent to CZ.
inline LocalFrame calibrate_local_frame(const Gate4& u0,
                                        CalibrationTolerances tol = {}) {
  if (unitarity_defect(u0) > tol.unitarity)
    throw CalibrationError("calibration gate is not unitary");
  if (fm_objective(u0) > tol.fm)
    throw CalibrationError("calibration gate is not locally equivalent to CZ");

  // Normal matrix: the complex Schur form is diagonal with a unitary basis.
  Eigen::ComplexSchur<Gate4> schur(u0);
  const Gate4 z = schur.matrixU();
  const Eigen::Vector4cd lambda = schur.matrixT().diagonal();

  std::array<int, 4> perm{0, 1, 2, 3};  // perm[k] = target basis state of eigvec k
  std::array<int, 4> best{};
  double best_score = -1.0;
  double best_abs_phase = std::numeric_limits<double>::infinity();
  bool found = false;
  do {
    std::array<cplx, 4> l{};
    for (int k = 0; k < 4; ++k) l[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = lambda[k];
    const cplx ratio = l[0] * l[3] / (l[1] * l[2]);
    if (std::abs(ratio + 1.0) > tol.cross_ratio) continue;
    double score = 0.0;
    for (int k = 0; k < 4; ++k) score += std::norm(z(perm[static_cast<std::size_t>(k)], k));
    const double abs_phase = std::abs(std::arg(-l[3]));
    const bool better = score > best_score + 1e-12 ||
                        (std::abs(score - best_score) <= 1e-12 &&
                         abs_phase < best_abs_phase);
    if (better) {
      best = perm;
      best_score = score;
      best_abs_phase = abs_phase;
      found = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!found)
    throw CalibrationError(
        "eigenvalues do not match the CZ pattern l00 l11 = -l01 l10");

  LocalFrame frame;
  Eigen::Vector4cd l;
  for (int k = 0; k < 4; ++k) {
    const int t = best[static_cast<std::size_t>(k)];
    Eigen::Vector4cd col = z.col(k);
    const cplx pivot = col[t];
    if (std::abs(pivot) > 1e-14) col *= std::conj(pivot) / std::abs(pivot);
    frame.v.col(t) = col;
    l[t] = lambda[k];
  }
  frame.phase = -std::arg(-l[3]);
  const Gate4 cz = cz_gate();
  for (int t = 0; t < 4; ++t)
    frame.correction[t] = cz(t, t) / (std::polar(1.0, frame.phase) * l[t]);
  return frame;
}

}  // namespace dfgate

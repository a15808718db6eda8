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

#include "dfgate/encodings.hpp"
#include "dfgate/invariants.hpp"
#include "dfgate/pulses.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <random>

using namespace dfgate;
using dfgate::testing::kron;

namespace {

const double kPi = std::acos(-1.0);

// Basis change typed in independently, with explicit loops.
Gate4 q_matrix() {
  const cplx i(0, 1);
  const double h = 1.0 / std::sqrt(2.0);
  const cplx rows[4][4] = {{1, 0, 0, i}, {0, i, 1, 0}, {0, i, -1, 0}, {1, 0, 0, -i}};
  Gate4 q;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) q(r, c) = h * rows[r][c];
  return q;
}

Gate4 loop_product(const Gate4& a, const Gate4& b) {
  Gate4 out = Gate4::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) out(r, c) += a(r, k) * b(k, c);
  return out;
}

// Invariants from eigenvalues: tr m = sum l, tr m^2 = sum l^2, det = prod.
MakhlinPair oracle_invariants(const Gate4& u) {
  const Gate4 q = q_matrix();
  Gate4 q_dag;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) q_dag(r, c) = std::conj(q(c, r));
  const Gate4 mb = loop_product(q_dag, loop_product(u, q));
  Gate4 mbt;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) mbt(r, c) = mb(c, r);
  const Gate4 m = loop_product(mbt, mb);
  Eigen::ComplexEigenSolver<Gate4> em(m);
  cplx s1 = 0.0;
  cplx s2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    s1 += em.eigenvalues()[k];
    s2 += em.eigenvalues()[k] * em.eigenvalues()[k];
  }
  Eigen::ComplexEigenSolver<Gate4> eu(u);
  cplx det = 1.0;
  for (int k = 0; k < 4; ++k) det *= eu.eigenvalues()[k];
  const cplx det_dag = std::conj(det);
  return {s1 * s1 / 16.0 * det_dag, (s1 * s1 - s2) / 4.0 * det_dag};
}

Gate4 local_pair(std::mt19937_64& rng) {
  return kron(dfgate::testing::random_unitary(2, rng), dfgate::testing::random_unitary(2, rng));
}

void check_pair(const MakhlinPair& m, cplx m1, cplx m2, double tol) {
  CHECK(std::abs(m.m1 - m1) < tol);
  CHECK(std::abs(m.m2 - m2) < tol);
}

}  // namespace

TEST_CASE("Bell matrix", "[invariants]") {
  const Gate4 q = bell_matrix();
  CHECK((q - q_matrix()).norm() < 1e-15);
  CHECK((q.adjoint() * q - Gate4::Identity()).norm() < 1e-14);
  CHECK((bell_basis_transform(Gate4::Identity()) - Gate4::Identity()).norm() < 1e-14);
  CHECK((q * q - Gate4::Identity()).norm() > 0.1);
  std::mt19937_64 rng(2);
  const Gate4 m = dfgate::testing::random_unitary(4, rng);
  CHECK((bell_basis_transform(m) - loop_product(q.adjoint(), loop_product(m, q))).norm() < 1e-13);
  CHECK((bell_basis_transform(bell_basis_transform(m)) - m).norm() > 1e-3);
}

TEST_CASE("Makhlin invariants of standard gates", "[invariants]") {
  Gate4 cnot = Gate4::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  Gate4 swap = Gate4::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  struct Case {
    Gate4 u;
    cplx m1, m2;
  };
  const Case cases[] = {{Gate4::Identity(), 1.0, 3.0},
                        {cz_gate(), 0.0, 1.0},
                        {cnot, 0.0, 1.0},
                        {swap, -1.0, -3.0}};
  for (const auto& c : cases) {
    check_pair(makhlin_invariants(c.u), c.m1, c.m2, 1e-12);
    check_pair(oracle_invariants(c.u), c.m1, c.m2, 1e-12);
  }
}

TEST_CASE("library and oracle invariants agree on random gates", "[invariants]") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const Gate4 u = dfgate::testing::random_unitary(4, rng);
    const auto a = makhlin_invariants(u);
    const auto b = oracle_invariants(u);
    check_pair(a, b.m1, b.m2, 1e-10);
  }
}

TEST_CASE("invariants are local-unitary invariant", "[invariants]") {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Gate4 u = dfgate::testing::random_unitary(4, rng);
    const Gate4 dressed = local_pair(rng) * u * local_pair(rng);
    const auto a = makhlin_invariants(u);
    const auto b = makhlin_invariants(dressed);
    worst = std::max({worst, std::abs(a.m1 - b.m1), std::abs(a.m2 - b.m2)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("fm objective", "[invariants]") {
  CHECK(fm_objective(cz_gate()) < 1e-15);
  CHECK(fm_objective(Gate4::Identity()) == Catch::Approx(3.0));
  std::mt19937_64 rng(12);
  for (int k = 0; k < 10; ++k)
    CHECK(fm_objective(Gate4(local_pair(rng) * cz_gate() * local_pair(rng))) < 1e-9);
}

TEST_CASE("calibration on CZ and phased CZ", "[invariants]") {
  const LocalFrame f = calibrate_local_frame(cz_gate());
  CHECK(f.residual(cz_gate()) < 1e-12);
  CHECK(std::abs(f.phase) < 1e-12);

  const Gate4 phased = std::polar(1.0, kPi / 7.0) * cz_gate();
  const LocalFrame g = calibrate_local_frame(phased);
  CHECK(g.residual(phased) < 1e-12);
  CHECK(std::abs(std::remainder(g.phase + kPi / 7.0, 2.0 * kPi)) < 1e-12);
}

TEST_CASE("calibration on conjugated CZ with local Z rotations", "[invariants]") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int k = 0; k < 10; ++k) {
    const double a = angle(rng);
    const double b = angle(rng);
    Eigen::Vector4cd rz;
    rz << std::polar(1.0, a + b), std::polar(1.0, a - b), std::polar(1.0, b - a),
        std::polar(1.0, -a - b);
    const Gate4 w = local_pair(rng);
    const Gate4 u0 = std::polar(1.0, angle(rng)) * w * cz_gate() * rz.asDiagonal() * w.adjoint();
    const LocalFrame f = calibrate_local_frame(u0);
    CHECK(f.residual(u0) < 1e-10);
    CHECK((f.v.adjoint() * f.v - Gate4::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("calibration on the published gate", "[invariants]") {
  const auto l = EncodingLayout::standard(EncodingKind::FourQubit);
  const Gate4 u0 = project_to_logical(gate_unitary(table1_parameters(), l), pair_basis(l));
  const LocalFrame f = calibrate_local_frame(u0);
  CHECK(f.residual(u0) < 1e-10);
  // The correction is a product of single-qubit phases.
  const auto& d = f.correction;
  CHECK(std::abs(d[0] * d[3] / (d[1] * d[2]) - 1.0) < 1e-6);
}

TEST_CASE("calibration rejects gates outside the CZ class", "[invariants]") {
  CHECK_THROWS_AS(calibrate_local_frame(Gate4::Identity()), CalibrationError);
  CHECK_THROWS_AS(calibrate_local_frame(Gate4(0.5 * cz_gate())), CalibrationError);
}

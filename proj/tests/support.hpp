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

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace dfgate::testing {

inline Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd m;
  switch (k) {
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, cplx(0, -1), cplx(0, 1), 0.0; break;
    case 3: m << 1.0, 0.0, 0.0, -1.0; break;
    default: m = Eigen::Matrix2cd::Identity();
  }
  return m;
}

/// Plain Kronecker product, a the most significant factor.
inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Single-site operator at `site` (1 = leftmost factor) of an n-site chain.
inline Operator on_site(const Operator& m, int site, int n) {
  Operator out = Operator::Identity(1, 1);
  for (int s = 1; s <= n; ++s)
    out = kron(out, s == site ? m : Operator(Operator::Identity(2, 2)));
  return out;
}

/// Dense SWAP of two sites, built by bit permutation.
inline Operator swap_matrix(int i, int j, int n) {
  const int dim = 1 << n;
  Operator s = Operator::Zero(dim, dim);
  const int bi = n - i;
  const int bj = n - j;
  for (int x = 0; x < dim; ++x) {
    const int vi = (x >> bi) & 1;
    const int vj = (x >> bj) & 1;
    int y = x & ~((1 << bi) | (1 << bj));
    y |= (vi << bj) | (vj << bi);
    s(y, x) = 1.0;
  }
  return s;
}

/// exp(-i H t) by scaled Taylor series and repeated squaring.
inline Operator taylor_expm(const Operator& h, double t) {
  const Operator a = cplx(0, -t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Operator x = a / std::pow(2.0, squarings);
  Operator term = Operator::Identity(h.rows(), h.cols());
  Operator sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline Operator random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

/// Haar-ish unitary from the QR of a complex Gaussian matrix.
inline Operator random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<Operator> qr(a);
  Operator q = qr.householderQ();
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

}  // namespace dfgate::testing

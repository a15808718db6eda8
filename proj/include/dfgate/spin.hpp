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
#include <span>
#include <string>
#include <vector>

namespace dfgate {

enum class Axis { X, Y, Z };
enum class SpinComponent { X, Y, Z, Plus, Minus };

namespace detail {

inline void check_site(int site, int qubits) {
  if (qubits < 1 || qubits > 10)
    throw IndexError("qubit count must be in [1, 10], got " +
                     std::to_string(qubits));
  if (site < 1 || site > qubits)
    throw IndexError("site " + std::to_string(site) + " outside [1, " +
                     std::to_string(qubits) + "]");
}

inline void check_sites(std::span<const int> sites, int qubits) {
  if (sites.empty()) throw InvalidArgument("site set must be non-empty");
  for (std::size_t a = 0; a < sites.size(); ++a) {
    check_site(sites[a], qubits);
    for (std::size_t b = a + 1; b < sites.size(); ++b)
      if (sites[a] == sites[b])
        throw InvalidArgument("duplicate site " + std::to_string(sites[a]));
  }
}

inline int bit_mask(int site, int qubits) { return 1 << (qubits - site); }

}  // namespace detail

/// Pauli matrix on one site, identity elsewhere.
inline Operator pauli_op(Axis axis, int site, int qubits) {
  detail::check_site(site, qubits);
  const int dim = dimension_for(qubits);
  const int mask = detail::bit_mask(site, qubits);
  Operator op = Operator::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const bool up = (k & mask) == 0;
    switch (axis) {
      case Axis::X:
        op(k ^ mask, k) = 1.0;
        break;
      case Axis::Y:
        op(k ^ mask, k) = up ? kI : -kI;
        break;
      case Axis::Z:
        op(k, k) = up ? 1.0 : -1.0;
        break;
    }
  }
  return op;
}

/// Heisenberg exchange sigma_i . sigma_j; eigenvalue +1 on the pair triplet
/// and -3 on the pair singlet.
inline Operator exchange_op(int i, int j, int qubits) {
  detail::check_site(i, qubits);
  detail::check_site(j, qubits);
  if (i == j)
    throw InvalidArgument("exchange needs two distinct sites, got " +
                          std::to_string(i) + " twice");
  Operator e = pauli_op(Axis::X, i, qubits) * pauli_op(Axis::X, j, qubits);
  e += pauli_op(Axis::Y, i, qubits) * pauli_op(Axis::Y, j, qubits);
  e += pauli_op(Axis::Z, i, qubits) * pauli_op(Axis::Z, j, qubits);
  return e;
}

/// Sum of single-site spin operators over `sites`. Plus and Minus use
/// sigma_pm = (sigma_x +- i sigma_y) / 2.
inline Operator collective_spin_op(SpinComponent component,
                                   std::span<const int> sites, int qubits) {
  detail::check_sites(sites, qubits);
  const int dim = dimension_for(qubits);
  Operator s = Operator::Zero(dim, dim);
  for (int site : sites) {
    switch (component) {
      case SpinComponent::X:
        s += pauli_op(Axis::X, site, qubits);
        break;
      case SpinComponent::Y:
        s += pauli_op(Axis::Y, site, qubits);
        break;
      case SpinComponent::Z:
        s += pauli_op(Axis::Z, site, qubits);
        break;
      case SpinComponent::Plus:
        s += 0.5 * (pauli_op(Axis::X, site, qubits) +
                    kI * pauli_op(Axis::Y, site, qubits));
        break;
      case SpinComponent::Minus:
        s += 0.5 * (pauli_op(Axis::X, site, qubits) -
                    kI * pauli_op(Axis::Y, site, qubits));
        break;
    }
  }
  return s;
}

/// (sum sigma)^2 over `sites`; eigenvalue 4 S (S + 1) on total spin S.
inline Operator total_spin_squared_op(std::span<const int> sites, int qubits) {
  const Operator sx = collective_spin_op(SpinComponent::X, sites, qubits);
  const Operator sy = collective_spin_op(SpinComponent::Y, sites, qubits);
  const Operator sz = collective_spin_op(SpinComponent::Z, sites, qubits);
  return sx * sx + sy * sy + sz * sz;
}

inline void require_hermitian(const Operator& h, const char* what) {
  if (h.rows() != h.cols())
    throw ContractViolation(std::string(what) + ": operator is not square");
  const double scale = std::max(1.0, max_abs(h));
  if (hermiticity_defect(h) > kHermitianTol * scale)
    throw ContractViolation(std::string(what) + ": operator is not Hermitian");
}

/// Eigendecomposition of a Hermitian generator, reused for many phases.
class HermitianSpectrum {
 public:
  HermitianSpectrum() = default;

  explicit HermitianSpectrum(const Operator& h) {
    require_hermitian(h, "HermitianSpectrum");
    // Symmetrize so round-off in the input cannot leak into the eigenbasis.
    const Operator hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(hs);
    if (solver.info() != Eigen::Success)
      throw ContractViolation("Hermitian eigensolver failed");
    values_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }

  const Eigen::VectorXd& values() const { return values_; }
  const Operator& vectors() const { return vectors_; }
  Eigen::Index dim() const { return values_.size(); }

  /// exp(-i H theta).
  Operator propagator(double theta) const {
    return vectors_ * phases(theta).asDiagonal() * vectors_.adjoint();
  }

  /// exp(-i H theta) applied to the columns of `block`.
  Operator apply(double theta, const Operator& block) const {
    return vectors_ * (phases(theta).asDiagonal() * (vectors_.adjoint() * block));
  }

 private:
  Eigen::VectorXcd phases(double theta) const {
    Eigen::VectorXcd p(values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k)
      p[k] = std::polar(1.0, -values_[k] * theta);
    return p;
  }

  Eigen::VectorXd values_;
  Operator vectors_;
};

/// exp(-i H theta) for Hermitian H.
inline Operator evolve(const Operator& h, double theta) {
  return HermitianSpectrum(h).propagator(theta);
}

/// J_SC times the sum of exchange over all six pairs of four sites.
/// Applies w, an operator on `sites` (first site most significant), to the
/// columns of x without forming the full-register operator.
inline Operator apply_local(const Operator& w, std::span<const int> sites, int qubits,
                            const Operator& x) {
  detail::check_sites(sites, qubits);
  const auto k = static_cast<int>(sites.size());
  const int local = 1 << k;
  if (w.rows() != local || w.cols() != local)
    throw InvalidArgument("local operator does not match the site count");
  if (x.rows() != dimension_for(qubits))
    throw InvalidArgument("state block does not match the register");
  std::vector<int> masks;
  int all = 0;
  for (int s : sites) {
    masks.push_back(detail::bit_mask(s, qubits));
    all |= masks.back();
  }
  // spread[l]: full-register bits of local index l.
  std::vector<int> spread(static_cast<std::size_t>(local), 0);
  for (int l = 0; l < local; ++l)
    for (int b = 0; b < k; ++b)
      if (l & (1 << (k - 1 - b))) spread[static_cast<std::size_t>(l)] |= masks[static_cast<std::size_t>(b)];
  Operator out = Operator::Zero(x.rows(), x.cols());
  Operator gathered(local, x.cols());
  for (Eigen::Index rest = 0; rest < x.rows(); ++rest) {
    if (rest & all) continue;
    for (int l = 0; l < local; ++l) gathered.row(l) = x.row(rest | spread[static_cast<std::size_t>(l)]);
    const Operator mixed = w * gathered;
    for (int l = 0; l < local; ++l) out.row(rest | spread[static_cast<std::size_t>(l)]) = mixed.row(l);
  }
  return out;
}

inline Operator supercoherent_hamiltonian(double coupling,
                                          std::span<const int> sites,
                                          int qubits) {
  if (sites.size() != 4)
    throw InvalidArgument("supercoherent Hamiltonian needs exactly 4 sites");
  detail::check_sites(sites, qubits);
  const int dim = dimension_for(qubits);
  Operator h = Operator::Zero(dim, dim);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      h += exchange_op(sites[a], sites[b], qubits);
  return coupling * h;
}

struct EigenLevel {
  double value;
  int multiplicity;
};

/// Groups sorted eigenvalues whose neighbours differ by less than `tol`.
inline std::vector<EigenLevel> cluster_levels(const Eigen::VectorXd& values,
                                              double tol = 1e-9) {
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end());
  std::vector<EigenLevel> levels;
  std::vector<double> members;
  auto flush = [&] {
    if (members.empty()) return;
    double sum = 0.0;
    for (double m : members) sum += m;
    levels.push_back({sum / static_cast<double>(members.size()),
                      static_cast<int>(members.size())});
    members.clear();
  };
  for (double x : v) {
    if (!members.empty() && x - members.back() >= tol) flush();
    members.push_back(x);
  }
  flush();
  return levels;
}

}  // namespace dfgate

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
#include "dfgate/encodings.hpp"
#include "dfgate/pulses.hpp"
#include "dfgate/spin.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace dfgate {

enum class WorkingSpace { Full, Reduced };

/// Orthonormal basis (columns, full-register coordinates) of the joint
/// (S^2, S_z) eigenspaces over all sites that contain the basis columns.
/// Every exchange-built pulse conserves both, so it acts block-diagonally.
inline Operator constant_spin_subspace(const LogicalBasis& basis) {
  const int n = basis.qubits();
  const int dim = dimension_for(n);
  const std::vector<int> all = detail::iota_sites(n);
  const Operator s2 = total_spin_squared_op(all, n);

  std::map<std::pair<long, int>, bool> sectors;  // (round(S^2), S_z)
  for (Eigen::Index c = 0; c < basis.size(); ++c) {
    const StateVector v = basis.columns.col(c);
    const double s2_value = (v.adjoint() * s2 * v)(0, 0).real();
    if ((s2 * v - s2_value * v).norm() > 1e-9)
      throw InvalidArgument("basis column is not an S^2 eigenvector");
    int sz = 0;
    bool sz_set = false;
    for (int k = 0; k < dim; ++k) {
      if (std::abs(v[k]) < 1e-12) continue;
      const int m = n - 2 * std::popcount(static_cast<unsigned>(k));
      if (sz_set && m != sz)
        throw InvalidArgument("basis column is not an S_z eigenvector");
      sz = m;
      sz_set = true;
    }
    sectors[{std::lround(s2_value), sz}] = true;
  }

  std::vector<StateVector> cols;
  for (const auto& [key, unused] : sectors) {
    const auto [s2_value, sz] = key;
    std::vector<int> idx;
    for (int k = 0; k < dim; ++k)
      if (n - 2 * std::popcount(static_cast<unsigned>(k)) == sz) idx.push_back(k);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Operator block(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b)
        block(a, b) = s2(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    const HermitianSpectrum spec(block);
    for (Eigen::Index e = 0; e < m; ++e) {
      if (std::abs(spec.values()[e] - static_cast<double>(s2_value)) > 1e-8) continue;
      StateVector full = StateVector::Zero(dim);
      for (Eigen::Index a = 0; a < m; ++a)
        full[idx[static_cast<std::size_t>(a)]] = spec.vectors()(a, e);
      cols.push_back(std::move(full));
    }
  }
  Operator w(dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    w.col(static_cast<Eigen::Index>(k)) = cols[k];
  return w;
}

/// Pre-diagonalised pulse Hamiltonians for fast repeated propagation of the
/// logical basis columns, either on the full register or on the constant-S
/// subspace holding the logical states.
class PulseBank {
 public:
  PulseBank(const EncodingLayout& layout, const LogicalBasis& basis,
            WorkingSpace space)
      : space_(space), basis_(basis) {
    if (space == WorkingSpace::Reduced) reduction_ = constant_spin_subspace(basis);
    auto spectrum = [&](const Operator& h) {
      return HermitianSpectrum(space_ == WorkingSpace::Reduced
                                   ? Operator(reduction_.adjoint() * h * reduction_)
                                   : h);
    };
    asymp_ = spectrum(named_hamiltonian(PulseLabel::Asymp, layout));
    parallel_ = spectrum(named_hamiltonian(PulseLabel::Parallel, layout));
    const Operator times = named_hamiltonian(PulseLabel::Times, layout);
    const Operator box = named_hamiltonian(PulseLabel::Box, layout);
    times_ = spectrum(times);
    box_ = spectrum(box);
    ring_ = spectrum(named_hamiltonian(PulseLabel::Ring, layout));
    box_times_ = spectrum(box + times);
    start_ = space_ == WorkingSpace::Reduced
                 ? Operator(reduction_.adjoint() * basis.columns)
                 : basis.columns;
  }

  WorkingSpace space() const { return space_; }
  Eigen::Index working_dim() const { return start_.rows(); }
  const LogicalBasis& basis() const { return basis_; }

  /// Logical basis columns expressed in the working space.
  const Operator& start() const { return start_; }

  Operator apply(PulseLabel label, double theta, const Operator& block,
                 double alpha = 0.0) const {
    switch (label) {
      case PulseLabel::Asymp: return asymp_.apply(theta, block);
      case PulseLabel::Parallel: return parallel_.apply(theta, block);
      case PulseLabel::Times: return times_.apply(theta, block);
      case PulseLabel::Box: return box_.apply(theta, block);
      case PulseLabel::Ring: return ring_.apply(theta, block);
      case PulseLabel::Symmetric:
        // box + times commutes with ring.
        return box_times_.apply(theta, ring_.apply(alpha * theta, block));
    }
    throw InvalidArgument("unknown pulse label");
  }

  /// Image of the basis under prod_k exp(-i H_k theta_k), first label leftmost.
  Operator sequence_image(std::span<const PulseLabel> labels,
                          std::span<const double> thetas) const {
    if (labels.size() != thetas.size())
      throw InvalidArgument("template and phase vector lengths differ");
    Operator x = start_;
    for (std::size_t k = labels.size(); k-- > 0;) x = apply(labels[k], thetas[k], x);
    return x;
  }

  /// Image of the basis under the compiled gate.
  Operator compiled_image(const CompiledSequence& seq) const {
    Operator x = start_;
    for (const auto& p : seq.pulses) x = apply(p.label, p.theta, x, p.alpha);
    return x;
  }

  /// B^dagger U B from an image in the working space.
  Operator project(const Operator& image) const { return start_.adjoint() * image; }

  /// Image mapped back to full-register coordinates.
  Operator to_full(const Operator& image) const {
    return space_ == WorkingSpace::Reduced ? Operator(reduction_ * image) : image;
  }

 private:
  WorkingSpace space_;
  LogicalBasis basis_;
  Operator reduction_;
  Operator start_;
  HermitianSpectrum asymp_, parallel_, times_, box_, ring_, box_times_;
};

}  // namespace dfgate

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
#include "dfgate/spin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace dfgate {

enum class EncodingKind { ThreeQubit, FourQubit };

inline int sites_per_qubit(EncodingKind kind) {
  return kind == EncodingKind::ThreeQubit ? 3 : 4;
}

inline std::string_view to_string(EncodingKind kind) {
  return kind == EncodingKind::ThreeQubit ? "3" : "4";
}

enum class LogicalQubit { A, B };

/// Which physical sites form each encoded qubit and which four sites the
/// pulses touch. The first two sites of each encoded qubit are its
/// m_{1,2}-defining pair.
///
/// Gate-site order is (A1, B1, B2, A2): with this labelling the "parallel"
/// pulse E14 + E23 couples sites inside each encoded qubit and the "asymp"
/// and "times" pulses are the two cross pairings.
struct EncodingLayout {
  EncodingKind kind = EncodingKind::FourQubit;
  std::vector<int> sites_a;
  std::vector<int> sites_b;
  std::array<int, 4> gate_sites{};

  int qubits() const {
    return static_cast<int>(sites_a.size() + sites_b.size());
  }

  const std::vector<int>& sites(LogicalQubit q) const {
    return q == LogicalQubit::A ? sites_a : sites_b;
  }

  std::vector<int> all_sites() const {
    std::vector<int> s = sites_a;
    s.insert(s.end(), sites_b.begin(), sites_b.end());
    return s;
  }

  void validate() const {
    const auto per = static_cast<std::size_t>(sites_per_qubit(kind));
    if (sites_a.size() != per || sites_b.size() != per)
      throw InvalidArgument("encoded qubits must have " + std::to_string(per) +
                            " sites each");
    const int n = qubits();
    detail::check_sites(all_sites(), n);
    auto in = [](const std::vector<int>& set, int s) {
      return std::find(set.begin(), set.end(), s) != set.end();
    };
    int from_a = 0;
    int from_b = 0;
    for (int g : gate_sites) {
      detail::check_site(g, n);
      from_a += in(sites_a, g) ? 1 : 0;
      from_b += in(sites_b, g) ? 1 : 0;
    }
    detail::check_sites(gate_sites, n);
    if (from_a != 2 || from_b != 2)
      throw InvalidArgument("gate sites must take exactly two sites from each "
                            "encoded qubit");
  }

  static EncodingLayout standard(EncodingKind kind) {
    EncodingLayout l;
    l.kind = kind;
    if (kind == EncodingKind::FourQubit) {
      l.sites_a = {1, 2, 3, 4};
      l.sites_b = {5, 6, 7, 8};
    } else {
      l.sites_a = {1, 2, 3};
      l.sites_b = {4, 5, 6};
    }
    l.gate_sites = {l.sites_a[0], l.sites_b[0], l.sites_b[1], l.sites_a[1]};
    return l;
  }
};

/// Orthonormal state vectors with labels. `sites` names the physical site
/// held by each register position, so a basis may live on one encoded
/// qubit's own sites or on the whole register.
struct LogicalBasis {
  Operator columns;
  std::vector<std::string> labels;
  std::vector<int> sites;

  Eigen::Index size() const { return columns.cols(); }
  int qubits() const { return static_cast<int>(sites.size()); }

  Operator projector() const { return columns * columns.adjoint(); }
};

struct GaugeBlockLabel {
  int s_total;
  int m_total;

  friend bool operator==(const GaugeBlockLabel&, const GaugeBlockLabel&) =
      default;
};

inline constexpr std::array<GaugeBlockLabel, 4> kGaugeBlocks{
    {{1, 1}, {1, 0}, {1, -1}, {0, 0}}};

inline std::string to_string(const GaugeBlockLabel& g) {
  return "(" + std::to_string(g.s_total) + "," + std::to_string(g.m_total) +
         ")";
}

namespace states {

inline StateVector ket(std::initializer_list<int> bits) {
  const int n = static_cast<int>(bits.size());
  int index = 0;
  for (int b : bits) index = (index << 1) | (b & 1);
  StateVector v = StateVector::Zero(dimension_for(n));
  v[index] = 1.0;
  return v;
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

inline StateVector singlet() {
  return (ket({0, 1}) - ket({1, 0})) / std::sqrt(2.0);
}
inline StateVector triplet_plus() { return ket({0, 0}); }
inline StateVector triplet_zero() {
  return (ket({0, 1}) + ket({1, 0})) / std::sqrt(2.0);
}
inline StateVector triplet_minus() { return ket({1, 1}); }

/// Logical states of one 4-site encoded qubit, on its own 16-dim register.
inline std::array<StateVector, 2> four_qubit_logical() {
  const StateVector zero = kron(singlet(), singlet());
  const StateVector one = (kron(triplet_plus(), triplet_minus()) -
                           kron(triplet_zero(), triplet_zero()) +
                           kron(triplet_minus(), triplet_plus())) /
                          std::sqrt(3.0);
  return {zero, one};
}

/// Gauge states of one 3-site encoded qubit, ordered
/// [0(+1), 0(-1), 1(+1), 1(-1)], on its own 8-dim register.
inline std::array<StateVector, 4> three_qubit_logical() {
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const StateVector up = ket({0});
  const StateVector dn = ket({1});
  return {kron(singlet(), up), kron(singlet(), dn),
          (r2 * kron(triplet_plus(), dn) - kron(triplet_zero(), up)) / r3,
          (kron(triplet_zero(), dn) - r2 * kron(triplet_minus(), up)) / r3};
}

/// Index of the three-qubit state with logical value x and gauge g = +-1.
inline int three_index(int x, int gauge) { return 2 * x + (gauge > 0 ? 0 : 1); }

}  // namespace states

namespace detail {

// Places local states of A and B (ordered by the layout's site lists) into
// the full register.
inline StateVector embed_pair(const EncodingLayout& layout,
                              const StateVector& a, const StateVector& b) {
  const int n = layout.qubits();
  const int dim = dimension_for(n);
  StateVector out = StateVector::Zero(dim);
  const auto& sa = layout.sites_a;
  const auto& sb = layout.sites_b;
  for (int k = 0; k < dim; ++k) {
    int ia = 0;
    for (int s : sa) ia = (ia << 1) | ((k >> (n - s)) & 1);
    int ib = 0;
    for (int s : sb) ib = (ib << 1) | ((k >> (n - s)) & 1);
    out[k] = a[ia] * b[ib];
  }
  return out;
}

inline std::vector<int> iota_sites(int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) s[static_cast<std::size_t>(k)] = k + 1;
  return s;
}

inline void require_kind(const EncodingLayout& layout, EncodingKind kind,
                         const char* what) {
  if (layout.kind != kind)
    throw InvalidArgument(std::string(what) + ": wrong encoding kind");
}

}  // namespace detail

/// |0>, |1> of one 4-site encoded qubit on that qubit's own sites.
inline LogicalBasis logical_basis_four(const EncodingLayout& layout,
                                       LogicalQubit which) {
  detail::require_kind(layout, EncodingKind::FourQubit, "logical_basis_four");
  const auto s = states::four_qubit_logical();
  LogicalBasis basis;
  basis.columns.resize(16, 2);
  basis.columns.col(0) = s[0];
  basis.columns.col(1) = s[1];
  basis.labels = {"0", "1"};
  basis.sites = layout.sites(which);
  return basis;
}

/// The four gauge states of one 3-site encoded qubit on its own sites.
inline LogicalBasis logical_basis_three(const EncodingLayout& layout,
                                        LogicalQubit which) {
  detail::require_kind(layout, EncodingKind::ThreeQubit, "logical_basis_three");
  const auto s = states::three_qubit_logical();
  LogicalBasis basis;
  basis.columns.resize(8, 4);
  for (int k = 0; k < 4; ++k) basis.columns.col(k) = s[static_cast<std::size_t>(k)];
  basis.labels = {"0(+1)", "0(-1)", "1(+1)", "1(-1)"};
  basis.sites = layout.sites(which);
  return basis;
}

/// Two-qubit gauge block of the 3-site encoding, columns ordered 00, 01, 10,
/// 11 in the logical values (x of A, y of B).
inline LogicalBasis gauge_block_basis(const EncodingLayout& layout,
                                      GaugeBlockLabel label) {
  if (layout.kind != EncodingKind::ThreeQubit)
    throw InvalidArgument("gauge blocks exist only for the 3-qubit encoding");
  const auto s = states::three_qubit_logical();
  auto st = [&](int x, int g) {
    return s[static_cast<std::size_t>(states::three_index(x, g))];
  };
  const double h = 1.0 / std::sqrt(2.0);
  LogicalBasis basis;
  const int dim = dimension_for(layout.qubits());
  basis.columns.resize(dim, 4);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      StateVector v;
      if (label == GaugeBlockLabel{1, 1}) {
        v = detail::embed_pair(layout, st(x, 1), st(y, 1));
      } else if (label == GaugeBlockLabel{1, -1}) {
        v = detail::embed_pair(layout, st(x, -1), st(y, -1));
      } else if (label == GaugeBlockLabel{1, 0}) {
        v = h * (detail::embed_pair(layout, st(x, 1), st(y, -1)) +
                 detail::embed_pair(layout, st(x, -1), st(y, 1)));
      } else if (label == GaugeBlockLabel{0, 0}) {
        v = h * (detail::embed_pair(layout, st(x, 1), st(y, -1)) -
                 detail::embed_pair(layout, st(x, -1), st(y, 1)));
      } else {
        throw InvalidArgument("unknown gauge block " + to_string(label));
      }
      basis.columns.col(2 * x + y) = v;
      basis.labels.push_back(std::to_string(x) + std::to_string(y) + " " +
                             to_string(label));
    }
  }
  basis.sites = detail::iota_sites(layout.qubits());
  return basis;
}

/// Logical basis of both encoded qubits in the full register: 4 columns
/// (|xy>, x of A) for the 4-site encoding, 16 for the 3-site encoding
/// (the four gauge blocks in kGaugeBlocks order).
inline LogicalBasis pair_basis(const EncodingLayout& layout) {
  layout.validate();
  LogicalBasis basis;
  basis.sites = detail::iota_sites(layout.qubits());
  if (layout.kind == EncodingKind::FourQubit) {
    const auto s = states::four_qubit_logical();
    basis.columns.resize(dimension_for(layout.qubits()), 4);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        basis.columns.col(2 * x + y) = detail::embed_pair(
            layout, s[static_cast<std::size_t>(x)], s[static_cast<std::size_t>(y)]);
        basis.labels.push_back(std::to_string(x) + std::to_string(y));
      }
    return basis;
  }
  basis.columns.resize(dimension_for(layout.qubits()), 16);
  int col = 0;
  for (const auto& label : kGaugeBlocks) {
    const LogicalBasis block = gauge_block_basis(layout, label);
    for (int k = 0; k < 4; ++k, ++col) {
      basis.columns.col(col) = block.columns.col(k);
      basis.labels.push_back(block.labels[static_cast<std::size_t>(k)]);
    }
  }
  return basis;
}

namespace detail {
inline void require_matching(const Operator& u, const LogicalBasis& basis) {
  if (u.rows() != basis.columns.rows())
    throw InvalidArgument("operator dimension " + std::to_string(u.rows()) +
                          " does not match basis dimension " +
                          std::to_string(basis.columns.rows()));
}
}  // namespace detail

/// B^dagger U B.
inline Operator project_to_logical(const Operator& u, const LogicalBasis& basis) {
  detail::require_matching(u, basis);
  if (u.cols() != u.rows())
    throw InvalidArgument("project_to_logical needs a square operator");
  return basis.columns.adjoint() * u * basis.columns;
}

/// B^dagger times an image U B that was propagated column-wise.
inline Operator project_image(const Operator& image, const LogicalBasis& basis) {
  detail::require_matching(image, basis);
  if (image.cols() != basis.size())
    throw InvalidArgument("image must have one column per basis vector");
  return basis.columns.adjoint() * image;
}

inline double leakage_from_projection(const Operator& projected) {
  const double k = static_cast<double>(projected.cols());
  return std::clamp(1.0 - projected.squaredNorm() / k, 0.0, 1.0);
}

/// 1 - ||B^dagger U B||_F^2 / k.
inline double leakage(const Operator& u, const LogicalBasis& basis) {
  return leakage_from_projection(project_to_logical(u, basis));
}

inline double leakage_of_image(const Operator& image, const LogicalBasis& basis) {
  return leakage_from_projection(project_image(image, basis));
}

/// Largest residual of the rewrite of each 4-site logical state as
/// (|x(+1)>|1> - |x(-1)>|0>) / sqrt(2) with 3-site states on the first three
/// sites of the encoded qubit.
inline double appendix_identity_check(const EncodingLayout& four_site_layout) {
  detail::require_kind(four_site_layout, EncodingKind::FourQubit,
                       "appendix_identity_check");
  const auto four = states::four_qubit_logical();
  const auto three = states::three_qubit_logical();
  const StateVector up = states::ket({0});
  const StateVector dn = states::ket({1});
  double worst = 0.0;
  for (int x = 0; x < 2; ++x) {
    const StateVector rhs =
        (states::kron(three[static_cast<std::size_t>(states::three_index(x, 1))], dn) -
         states::kron(three[static_cast<std::size_t>(states::three_index(x, -1))], up)) /
        std::sqrt(2.0);
    worst = std::max(worst, (four[static_cast<std::size_t>(x)] - rhs).norm());
  }
  return worst;
}

}  // namespace dfgate

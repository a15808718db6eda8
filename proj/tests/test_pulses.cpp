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
#include "dfgate/spin.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <random>

using namespace dfgate;

namespace {

const EncodingLayout& four() {
  static const auto l = EncodingLayout::standard(EncodingKind::FourQubit);
  return l;
}

const Operator& table1_gate() {
  static const Operator u = gate_unitary(table1_parameters(), four());
  return u;
}

// Exchange from the SWAP oracle on gate-local indices 1..4.
Operator swap_exchange(int a, int b, const EncodingLayout& l) {
  const int n = l.qubits();
  return 2.0 * dfgate::testing::swap_matrix(l.gate_sites[static_cast<std::size_t>(a - 1)],
                                            l.gate_sites[static_cast<std::size_t>(b - 1)], n) -
         Operator::Identity(1 << n, 1 << n);
}

}  // namespace

TEST_CASE("pulse labels round-trip", "[pulses]") {
  for (auto l : {PulseLabel::Asymp, PulseLabel::Parallel, PulseLabel::Times, PulseLabel::Box,
                 PulseLabel::Ring, PulseLabel::Symmetric})
    CHECK(parse_pulse_label(to_string(l)) == l);
  CHECK_FALSE(parse_pulse_label("square").has_value());
}

TEST_CASE("named Hamiltonians satisfy their algebra", "[pulses]") {
  const auto l = EncodingLayout::standard(EncodingKind::ThreeQubit);
  const Operator asymp = named_hamiltonian(PulseLabel::Asymp, l);
  const Operator parallel = named_hamiltonian(PulseLabel::Parallel, l);
  const Operator times = named_hamiltonian(PulseLabel::Times, l);
  const Operator box = named_hamiltonian(PulseLabel::Box, l);
  const Operator ring = named_hamiltonian(PulseLabel::Ring, l);
  CHECK((box - asymp - parallel).norm() < 1e-12);
  CHECK(commutator(ring, box).norm() < 1e-12);
  CHECK(commutator(ring, times).norm() < 1e-12);
  CHECK((named_hamiltonian(PulseLabel::Symmetric, l, 0.0) - box - times).norm() < 1e-12);
  CHECK((named_hamiltonian(PulseLabel::Symmetric, l, 0.3) - box - times - 0.3 * ring).norm() < 1e-12);
  CHECK_THROWS_AS(named_hamiltonian(PulseLabel::Symmetric, l), InvalidArgument);
  CHECK_THROWS_AS(named_hamiltonian(PulseLabel::Box, l, 0.1), InvalidArgument);

  // Oracle: exchanges from explicit SWAPs.
  const Operator oracle = swap_exchange(1, 2, l) * swap_exchange(3, 4, l) +
                          swap_exchange(1, 4, l) * swap_exchange(2, 3, l) +
                          swap_exchange(1, 3, l) * swap_exchange(2, 4, l);
  CHECK((ring - oracle).norm() < 1e-12);
  CHECK((times - swap_exchange(1, 3, l) - swap_exchange(2, 4, l)).norm() < 1e-12);
}

TEST_CASE("local pulse Hamiltonian matches the layout form", "[pulses]") {
  EncodingLayout bare;
  bare.kind = EncodingKind::FourQubit;
  // A 4+4 layout whose gate sites are 1..4 in order so the embedding is trivial.
  bare.sites_a = {1, 4, 5, 6};
  bare.sites_b = {2, 3, 7, 8};
  bare.gate_sites = {1, 2, 3, 4};
  const Operator id16 = Operator::Identity(16, 16);
  const Operator expected = named_hamiltonian(PulseLabel::Symmetric, bare, 0.2);
  const Operator local = dfgate::testing::kron(local_pulse_hamiltonian(PulseLabel::Symmetric, 0.2), id16);
  CHECK((expected - local).norm() < 1e-12);
}

TEST_CASE("general ring Hamiltonian", "[pulses]") {
  const auto l = EncodingLayout::standard(EncodingKind::ThreeQubit);
  GeneralRingCoefficients zero;
  CHECK(general_ring_hamiltonian(zero, l).norm() == 0.0);

  GeneralRingCoefficients uniform;
  uniform.pair.fill(1.0);
  uniform.c1234 = uniform.c1324 = uniform.c1342 = 0.4;
  const Operator expected = named_hamiltonian(PulseLabel::Box, l) +
                            named_hamiltonian(PulseLabel::Times, l) +
                            0.4 * named_hamiltonian(PulseLabel::Ring, l);
  CHECK((general_ring_hamiltonian(uniform, l) - expected).norm() < 1e-12);

  GeneralRingCoefficients single;
  single.c1234 = 1.0;
  const Operator oracle = swap_exchange(1, 2, l) * swap_exchange(3, 4, l) +
                          swap_exchange(1, 4, l) * swap_exchange(2, 3, l) -
                          swap_exchange(1, 3, l) * swap_exchange(2, 4, l);
  CHECK((general_ring_hamiltonian(single, l) - oracle).norm() < 1e-12);
  CHECK(hermiticity_defect(general_ring_hamiltonian(uniform, l)) < 1e-12);
}

TEST_CASE("compile_sequence produces five pulses in time order", "[pulses]") {
  const auto seq = compile_sequence(table1_parameters());
  CHECK(seq.alpha == Catch::Approx(0.158).margin(5e-4));
  CHECK(seq.pulses[0].label == PulseLabel::Asymp);
  CHECK(seq.pulses[1].label == PulseLabel::Symmetric);
  CHECK(seq.pulses[2].label == PulseLabel::Times);
  CHECK(seq.pulses[3].label == PulseLabel::Parallel);
  CHECK(seq.pulses[4].label == PulseLabel::Asymp);
  CHECK(seq.pulses[0].theta == table1_parameters().theta_asymp2);
  CHECK(seq.pulses[4].theta == table1_parameters().theta_asymp1);
  CHECK(seq.pulses[2].theta == Catch::Approx(2.552544025744 - 3.730678055907 + 2.0 * std::acos(-1.0)));
  CHECK(seq.pulses[2].theta == Catch::Approx(5.105051).margin(1e-6));
  CHECK(seq.total_time() == Catch::Approx(gate_time(table1_parameters())));

  PulseParameters no_ring = table1_parameters();
  no_ring.theta_ring = 0.0;
  CHECK(compile_sequence(no_ring).alpha == 0.0);
  PulseParameters undefined{};
  undefined.theta_ring = 0.5;
  CHECK_THROWS_AS(compile_sequence(undefined), InvalidArgument);
}

TEST_CASE("gate time", "[pulses]") {
  CHECK(gate_time(table1_parameters()) == Catch::Approx(16.6897).margin(1e-4));
  CHECK(gate_time(PulseParameters{}) == 0.0);
  PulseParameters p{};
  p.theta_times = p.theta_box = 1.2;
  CHECK(gate_time(p) == Catch::Approx(1.2));
}

TEST_CASE("zero phases give the identity gate", "[pulses]") {
  const auto l = EncodingLayout::standard(EncodingKind::ThreeQubit);
  CHECK((gate_unitary(PulseParameters{}, l) - Operator::Identity(64, 64)).norm() < 1e-12);
}

TEST_CASE("published phases give a leakage-free CZ-class gate", "[pulses]") {
  const Operator& u = table1_gate();
  CHECK(unitarity_defect(u) < 1e-11);
  const LogicalBasis b = pair_basis(four());
  CHECK(fm_objective(project_to_logical(u, b)) < 1e-10);
  CHECK(leakage(u, b) < 1e-10);
}

TEST_CASE("compiled and six-exponential forms agree", "[pulses]") {
  const Operator six = six_exponential_unitary(table1_parameters(), four());
  CHECK((six - table1_gate()).norm() < 1e-10);
}

TEST_CASE("pulses conserve spin", "[pulses]") {
  const auto l = four();
  std::vector<int> gate(l.gate_sites.begin(), l.gate_sites.end());
  const Operator s2_gate = total_spin_squared_op(gate, 8);
  const Operator s2_all = total_spin_squared_op(l.all_sites(), 8);
  for (auto label : {PulseLabel::Asymp, PulseLabel::Parallel, PulseLabel::Times, PulseLabel::Box,
                     PulseLabel::Ring}) {
    const Operator h = named_hamiltonian(label, l);
    CHECK(commutator(h, s2_gate).norm() < 1e-12);
    CHECK(commutator(h, s2_all).norm() < 1e-12);
  }
  for (auto c : {SpinComponent::Z, SpinComponent::Plus, SpinComponent::Minus})
    CHECK(commutator(table1_gate(), collective_spin_op(c, l.all_sites(), 8)).norm() < 1e-11);
}

TEST_CASE("2 pi shifts leave the logical gate class unchanged", "[pulses]") {
  const auto l = EncodingLayout::standard(EncodingKind::ThreeQubit);
  const LogicalBasis b = gauge_block_basis(l, {1, 1});
  const double base = fm_objective(project_to_logical(gate_unitary(table1_parameters(), l), b));
  for (std::size_t k = 0; k < 6; ++k) {
    auto a = table1_parameters().as_array();
    a[k] += 2.0 * std::acos(-1.0);
    const double shifted =
        fm_objective(project_to_logical(gate_unitary(PulseParameters::from_array(a), l), b));
    CHECK(std::abs(shifted - base) < 1e-12);
  }
}

TEST_CASE("alpha split reproduces the symmetric pulse", "[pulses]") {
  const auto p = table1_parameters();
  const auto s = alpha_split(0.2, 0.1, 0, p);
  CHECK(s.t_a == Catch::Approx(2.1598).margin(1e-4));
  CHECK(s.t_b == Catch::Approx(1.5709).margin(1e-4));
  CHECK(std::abs(s.t_a + s.t_b - p.theta_box) < 1e-12);
  CHECK(std::abs(0.2 * s.t_a + 0.1 * s.t_b - p.theta_ring) < 1e-12);

  const auto l = EncodingLayout::standard(EncodingKind::ThreeQubit);
  const Operator single = symmetric_pulse(p.theta_box, p.theta_ring / p.theta_box, l);
  const Operator split = symmetric_pulse(s.t_a, 0.2, l) * symmetric_pulse(s.t_b, 0.1, l);
  CHECK((single - split).norm() < 1e-10);

  CHECK_THROWS_AS(alpha_split(0.15, 0.1, 0, p), InfeasibleSplit);
  CHECK_THROWS_AS(alpha_split(0.2, 0.1, 1, p), InfeasibleSplit);
  CHECK_THROWS_AS(alpha_split(0.2, 0.1, -1, p), InvalidArgument);
  const auto edge = alpha_split(s.alpha_n + 1e-9, 0.1, 0, p);
  CHECK(edge.t_b < 1e-6);
}

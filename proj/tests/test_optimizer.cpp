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

#include "dfgate/optimizer.hpp"
#include "dfgate/propagation.hpp"
#include "dfgate/pulses.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

using namespace dfgate;

namespace {

const EncodingLayout& four() {
  static const auto l = EncodingLayout::standard(EncodingKind::FourQubit);
  return l;
}

std::vector<double> table1_theta() {
  const auto a = table1_parameters().as_array();
  return {a.begin(), a.end()};
}

// Dense full-register product, first label leftmost.
Operator dense_sequence(const SequenceTemplate& t, const std::vector<double>& theta) {
  Operator u = Operator::Identity(256, 256);
  for (std::size_t k = 0; k < t.size(); ++k)
    u = u * evolve(named_hamiltonian(t.labels[k], four()), theta[k]);
  return u;
}

}  // namespace

TEST_CASE("search config validation", "[optimizer]") {
  CHECK_NOTHROW(SearchConfig{}.validate());
  SearchConfig c;
  c.restarts = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.elite_count = c.population;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.crossover_prob = 1.5;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("sequence templates", "[optimizer]") {
  const auto w = SequenceTemplate::parse("asymp,parallel,times,box,ring,asymp");
  CHECK(w.is_working());
  CHECK(w.name() == "asymp,parallel,times,box,ring,asymp");
  CHECK(SequenceTemplate::parse("times,box,ring").labels == SequenceTemplate::u1().labels);
  CHECK_NOTHROW(SequenceTemplate::u2().validate());
  CHECK_NOTHROW(SequenceTemplate::u3().validate());
  CHECK_THROWS_AS(SequenceTemplate::parse("times,ring,asymp"), InvalidArgument);
  CHECK_THROWS_AS(SequenceTemplate::parse("symmetric,asymp"), InvalidArgument);
  CHECK_THROWS_AS(SequenceTemplate::parse("box,swap"), InvalidArgument);
  CHECK_THROWS_AS(SequenceTemplate{}.validate(), InvalidArgument);
}

TEST_CASE("constant-spin subspace holds the logical states", "[optimizer]") {
  const LogicalBasis b = pair_basis(four());
  const Operator w = constant_spin_subspace(b);
  CHECK(w.cols() == 14);
  CHECK((w.adjoint() * w - Operator::Identity(14, 14)).norm() < 1e-10);
  CHECK((w * (w.adjoint() * b.columns) - b.columns).norm() < 1e-10);
}

TEST_CASE("reduced and full propagation agree with the dense product", "[optimizer]") {
  const LogicalBasis b = pair_basis(four());
  const PulseBank reduced(four(), b, WorkingSpace::Reduced);
  const PulseBank full(four(), b, WorkingSpace::Full);
  const auto t = SequenceTemplate::working();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> phase(0.0, 6.3);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> theta(6);
    for (auto& x : theta) x = phase(rng);
    const Operator oracle = project_to_logical(dense_sequence(t, theta), b);
    CHECK((reduced.project(reduced.sequence_image(t.labels, theta)) - oracle).norm() < 1e-10);
    CHECK((full.project(full.sequence_image(t.labels, theta)) - oracle).norm() < 1e-10);
    CHECK((reduced.to_full(reduced.sequence_image(t.labels, theta)) -
           dense_sequence(t, theta) * b.columns).norm() < 1e-10);
  }
}

TEST_CASE("objective vanishes at the published phases", "[optimizer]") {
  const SequenceObjective f(SequenceTemplate::working(), four(), 10.0);
  auto theta = table1_theta();
  const auto terms = f.terms(theta);
  CHECK(terms.fm < 1e-10);
  CHECK(terms.leakage < 1e-10);
  theta[2] += 2.0 * std::acos(-1.0);
  CHECK(f.terms(theta).fm < 1e-10);
  CHECK(objective(table1_theta(), SequenceTemplate::working(), four()) < 1e-10);
  CHECK_THROWS_AS(f.terms(std::vector<double>(5, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(SequenceObjective(SequenceTemplate::working(),
                                    EncodingLayout::standard(EncodingKind::ThreeQubit), 10.0),
                  InvalidArgument);
}

TEST_CASE("genetic search is deterministic and thread-count independent", "[optimizer]") {
  const SequenceObjective f(SequenceTemplate::working(), four(), 10.0);
  SearchConfig c;
  c.generations = 20;
  c.population = 24;
  c.seed = 99;
  setenv("DFGATE_THREADS", "1", 1);
  const auto a = genetic_search(f, c);
  setenv("DFGATE_THREADS", "4", 1);
  const auto b = genetic_search(f, c);
  unsetenv("DFGATE_THREADS");
  CHECK(a.theta == b.theta);
  CHECK(a.history == b.history);
  CHECK(a.evaluations == 24 + 20 * 22);
  for (std::size_t k = 1; k < a.history.size(); ++k) CHECK(a.history[k] <= a.history[k - 1]);
  c.seed = 100;
  CHECK(genetic_search(f, c).theta != a.theta);
}

TEST_CASE("simplex refinement converges near a solution", "[optimizer]") {
  const SequenceObjective f(SequenceTemplate::working(), four(), 10.0);
  auto start = table1_theta();
  for (auto& x : start) x += 0.02;
  const auto r = nelder_mead_refine(f, start, SearchConfig{});
  CHECK(r.fm < 1e-10);
  CHECK(r.leakage < 1e-10);
  CHECK(r.objective <= f(start));
}

TEST_CASE("full search finds a CZ sequence", "[optimizer][slow]") {
  const auto out = run_search(SequenceTemplate::working(), SearchConfig{}, four());
  CHECK(out.restarts.size() == 8);
  CHECK(out.best.fm < 1e-8);
  CHECK(out.best.leakage < 1e-8);
  REQUIRE(out.best.parameters(SequenceTemplate::working()).has_value());
}

TEST_CASE("three-pulse template stays away from CZ", "[optimizer][slow]") {
  SearchConfig c;
  c.restarts = 2;
  const auto out = run_search(SequenceTemplate::u1(), c, four());
  CHECK(out.best.fm > 1e-3);
  CHECK_FALSE(out.best.parameters(SequenceTemplate::u1()).has_value());
}

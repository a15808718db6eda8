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
#include "dfgate/invariants.hpp"
#include "dfgate/parallel.hpp"
#include "dfgate/propagation.hpp"
#include "dfgate/pulses.hpp"
#include "dfgate/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dfgate {

struct SearchConfig {
  int population = 60;
  int generations = 500;
  int tournament_size = 3;
  double crossover_prob = 0.7;
  double mutation_prob = 0.2;
  double mutation_sigma = 0.3;
  int elite_count = 2;
  int restarts = 8;
  int nm_max_iter = 5000;
  double nm_tol_x = 1e-12;
  double nm_tol_f = 1e-14;
  double nm_initial_step = 0.1;
  double leakage_weight = 10.0;
  std::uint64_t seed = 1;
  WorkingSpace space = WorkingSpace::Reduced;

  void validate() const {
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (population < 4) throw InvalidArgument("population must be >= 4");
    if (generations < 0) throw InvalidArgument("generations must be >= 0");
    if (tournament_size < 1) throw InvalidArgument("tournament_size must be >= 1");
    if (!prob(crossover_prob) || !prob(mutation_prob))
      throw InvalidArgument("probabilities must lie in [0, 1]");
    if (mutation_sigma < 0.0) throw InvalidArgument("mutation_sigma must be >= 0");
    if (elite_count < 0 || elite_count >= population)
      throw InvalidArgument("elite_count must be in [0, population)");
    if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
    if (nm_max_iter < 0) throw InvalidArgument("nm_max_iter must be >= 0");
    if (leakage_weight < 0.0) throw InvalidArgument("leakage_weight must be >= 0");
  }
};

/// Ordered pulse labels; the first label is the leftmost unitary factor.
struct SequenceTemplate {
  std::vector<PulseLabel> labels;

  std::size_t size() const { return labels.size(); }

  void validate() const {
    if (labels.empty()) throw InvalidArgument("template must not be empty");
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (labels[k] == PulseLabel::Symmetric)
        throw InvalidArgument("symmetric pulses come only from compilation");
      if (labels[k] != PulseLabel::Ring) continue;
      const bool left = k > 0 && labels[k - 1] == PulseLabel::Box;
      const bool right = k + 1 < labels.size() && labels[k + 1] == PulseLabel::Box;
      if (!left && !right)
        throw InvalidArgument("ring pulse must be adjacent to a box pulse");
    }
  }

  std::string name() const {
    std::string s;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (k) s += ',';
      s += to_string(labels[k]);
    }
    return s;
  }

  /// Parses "asymp,parallel,times,box,ring,asymp".
  static SequenceTemplate parse(std::string_view text) {
    SequenceTemplate t;
    std::string item;
    std::stringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
      const auto label = parse_pulse_label(item);
      if (!label) throw InvalidArgument("unknown pulse label '" + item + "'");
      t.labels.push_back(*label);
    }
    t.validate();
    return t;
  }

  /// U_asymp U_parallel U_times U_box U_ring U_asymp.
  static SequenceTemplate working() {
    return {{PulseLabel::Asymp, PulseLabel::Parallel, PulseLabel::Times,
             PulseLabel::Box, PulseLabel::Ring, PulseLabel::Asymp}};
  }
  static SequenceTemplate u1() {
    return {{PulseLabel::Times, PulseLabel::Box, PulseLabel::Ring}};
  }
  static SequenceTemplate u2() {
    return {{PulseLabel::Asymp, PulseLabel::Times, PulseLabel::Box,
             PulseLabel::Ring}};
  }
  static SequenceTemplate u3() {
    return {{PulseLabel::Asymp, PulseLabel::Times, PulseLabel::Box,
             PulseLabel::Ring, PulseLabel::Asymp}};
  }

  bool is_working() const { return labels == working().labels; }
};

struct SearchResult {
  std::vector<double> theta;
  double fm = 0.0;
  double leakage = 0.0;
  double objective = 0.0;
  long evaluations = 0;
  bool converged = false;
  /// Best objective after each generation or simplex iteration.
  std::vector<double> history;

  std::optional<PulseParameters> parameters(const SequenceTemplate& t) const {
    if (!t.is_working() || theta.size() != 6) return std::nullopt;
    std::array<double, 6> a{};
    std::copy(theta.begin(), theta.end(), a.begin());
    return PulseParameters::from_array(a);
  }
};

/// f_m + leakage_weight * L4 for a template, evaluated in the 4-site
/// encoding. Holds the pre-diagonalised pulses for repeated calls.
class SequenceObjective {
 public:
  SequenceObjective(SequenceTemplate tmpl, const EncodingLayout& layout,
                    double leakage_weight,
                    WorkingSpace space = WorkingSpace::Reduced)
      : template_(std::move(tmpl)),
        weight_(leakage_weight),
        bank_(layout, objective_basis(layout), space) {
    template_.validate();
  }

  struct Terms {
    double fm;
    double leakage;
    double total;
  };

  Terms terms(std::span<const double> theta) const {
    if (theta.size() != template_.size())
      throw InvalidArgument("phase vector length does not match the template");
    const Gate4 g = bank_.project(bank_.sequence_image(template_.labels, theta));
    const double fm = fm_objective(g);
    const double leak = leakage_from_projection(g);
    return {fm, leak, fm + weight_ * leak};
  }

  double operator()(std::span<const double> theta) const { return terms(theta).total; }

  const SequenceTemplate& sequence_template() const { return template_; }

 private:
  static LogicalBasis objective_basis(const EncodingLayout& layout) {
    detail::require_kind(layout, EncodingKind::FourQubit, "objective");
    return pair_basis(layout);
  }

  SequenceTemplate template_;
  double weight_;
  PulseBank bank_;
};

inline double objective(std::span<const double> theta, const SequenceTemplate& t,
                        const EncodingLayout& layout, double leakage_weight = 10.0) {
  return SequenceObjective(t, layout, leakage_weight)(theta);
}

namespace detail {

inline SearchResult finish(const SequenceObjective& f, std::vector<double> theta,
                           long evaluations, bool converged,
                           std::vector<double> history) {
  for (double& t : theta) t = wrap_phase(t);
  const auto terms = f.terms(theta);
  SearchResult r;
  r.theta = std::move(theta);
  r.fm = terms.fm;
  r.leakage = terms.leakage;
  r.objective = terms.total;
  r.evaluations = evaluations;
  r.converged = converged;
  r.history = std::move(history);
  return r;
}

}  // namespace detail

/// Real-coded genetic search: tournament selection, uniform crossover,
/// Gaussian mutation with wrap-around, elitism. Genes start uniform in
/// [0, 2 pi) unless `initial` supplies individuals. Individual i of
/// generation g draws from stream (seed, g, i).
inline SearchResult genetic_search(const SequenceObjective& f,
                                   const SearchConfig& config,
                                   const std::vector<std::vector<double>>& initial = {}) {
  config.validate();
  const auto genes = f.sequence_template().size();
  const auto pop = static_cast<std::size_t>(config.population);
  using Individual = std::vector<double>;

  std::vector<Individual> population(pop, Individual(genes));
  for (std::size_t i = 0; i < pop; ++i) {
    if (i < initial.size()) {
      if (initial[i].size() != genes)
        throw InvalidArgument("initial individual has the wrong length");
      population[i] = initial[i];
      continue;
    }
    auto rng = derive_stream(config.seed, {0, i});
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    for (auto& g : population[i]) g = uni(rng);
  }
  std::vector<double> fitness(pop);
  long evaluations = 0;
  auto evaluate = [&](std::size_t from) {
    parallel_for(pop - from, [&](std::size_t k) {
      fitness[from + k] = f(population[from + k]);
    });
    evaluations += static_cast<long>(pop - from);
  };
  evaluate(0);

  auto ranking = [&] {
    std::vector<std::size_t> order(pop);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    return order;
  };

  std::vector<double> history;
  auto order = ranking();
  history.push_back(fitness[order[0]]);
  const auto elites = static_cast<std::size_t>(config.elite_count);

  for (int gen = 1; gen <= config.generations; ++gen) {
    std::vector<Individual> next(pop);
    for (std::size_t e = 0; e < elites; ++e) next[e] = population[order[e]];
    for (std::size_t i = elites; i < pop; ++i) {
      auto rng = derive_stream(config.seed, {static_cast<std::uint64_t>(gen), i});
      std::uniform_int_distribution<std::size_t> pick(0, pop - 1);
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      std::normal_distribution<double> kick(0.0, config.mutation_sigma);
      auto tournament = [&] {
        std::size_t best = pick(rng);
        for (int t = 1; t < config.tournament_size; ++t) {
          const std::size_t c = pick(rng);
          if (fitness[c] < fitness[best] || (fitness[c] == fitness[best] && c < best))
            best = c;
        }
        return best;
      };
      const Individual& p1 = population[tournament()];
      const Individual& p2 = population[tournament()];
      Individual child = p1;
      if (coin(rng) < config.crossover_prob)
        for (std::size_t g = 0; g < genes; ++g)
          if (coin(rng) < 0.5) child[g] = p2[g];
      for (auto& g : child)
        if (coin(rng) < config.mutation_prob) g = wrap_phase(g + kick(rng));
      next[i] = std::move(child);
    }
    std::vector<double> elite_fitness(elites);
    for (std::size_t e = 0; e < elites; ++e) elite_fitness[e] = fitness[order[e]];
    population = std::move(next);
    for (std::size_t e = 0; e < elites; ++e) fitness[e] = elite_fitness[e];
    evaluate(elites);
    order = ranking();
    history.push_back(fitness[order[0]]);
  }
  return detail::finish(f, population[order[0]], evaluations, false,
                        std::move(history));
}

/// Nelder-Mead simplex (reflect 1, expand 2, contract 0.5, shrink 0.5).
/// Converged when the simplex diameter around the best vertex is below
/// nm_tol_x or the objective spread is below nm_tol_f.
inline SearchResult nelder_mead_refine(const SequenceObjective& f,
                                       std::span<const double> start,
                                       const SearchConfig& config) {
  config.validate();
  const std::size_t dim = f.sequence_template().size();
  if (start.size() != dim)
    throw InvalidArgument("start vector length does not match the template");
  using Point = std::vector<double>;
  std::vector<Point> simplex(dim + 1, Point(start.begin(), start.end()));
  for (std::size_t k = 0; k < dim; ++k) simplex[k + 1][k] += config.nm_initial_step;
  std::vector<double> values(dim + 1);
  long evaluations = 0;
  auto eval = [&](const Point& p) {
    ++evaluations;
    return f(p);
  };
  for (std::size_t k = 0; k <= dim; ++k) values[k] = eval(simplex[k]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  };
  auto combine = [&](const Point& a, const Point& b, double t) {
    Point p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = a[k] + t * (b[k] - a[k]);
    return p;
  };

  std::vector<double> history;
  bool converged = false;
  for (int iter = 0; iter < config.nm_max_iter; ++iter) {
    sort_simplex();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];
    history.push_back(values[best]);

    double diameter = 0.0;
    for (std::size_t k = 0; k <= dim; ++k)
      for (std::size_t j = 0; j < dim; ++j)
        diameter = std::max(diameter, std::abs(simplex[k][j] - simplex[best][j]));
    if (diameter < config.nm_tol_x || values[worst] - values[best] < config.nm_tol_f) {
      converged = true;
      break;
    }

    Point centroid(dim, 0.0);
    for (std::size_t k = 0; k <= dim; ++k) {
      if (k == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[k][j] / double(dim);
    }
    const Point reflected = combine(centroid, simplex[worst], -1.0);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Point expanded = combine(centroid, simplex[worst], -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    if (fr < values[worst]) {
      const Point outside = combine(centroid, reflected, 0.5);
      const double fc = eval(outside);
      if (fc <= fr) {
        simplex[worst] = outside;
        values[worst] = fc;
        continue;
      }
    } else {
      const Point inside = combine(centroid, simplex[worst], 0.5);
      const double fc = eval(inside);
      if (fc < values[worst]) {
        simplex[worst] = inside;
        values[worst] = fc;
        continue;
      }
    }
    for (std::size_t k = 0; k <= dim; ++k) {
      if (k == best) continue;
      simplex[k] = combine(simplex[best], simplex[k], 0.5);
      values[k] = eval(simplex[k]);
    }
  }
  sort_simplex();
  if (!converged) history.push_back(values[order.front()]);
  return detail::finish(f, simplex[order.front()], evaluations, converged,
                        std::move(history));
}

struct SearchOutcome {
  SearchResult best;
  std::vector<SearchResult> restarts;
};

/// Genetic search followed by simplex refinement, once per restart. Restart r
/// runs with seed drawn from stream (seed, r).
inline SearchOutcome run_search(const SequenceTemplate& t, const SearchConfig& config,
                                const EncodingLayout& layout) {
  config.validate();
  const SequenceObjective f(t, layout, config.leakage_weight, config.space);
  SearchOutcome out;
  for (int r = 0; r < config.restarts; ++r) {
    SearchConfig local = config;
    local.seed = derive_stream(config.seed, {static_cast<std::uint64_t>(r)})();
    const SearchResult ga = genetic_search(f, local);
    SearchResult nm = nelder_mead_refine(f, ga.theta, local);
    nm.evaluations += ga.evaluations;
    out.restarts.push_back(std::move(nm));
  }
  out.best = *std::min_element(out.restarts.begin(), out.restarts.end(),
                               [](const SearchResult& a, const SearchResult& b) {
                                 return a.objective < b.objective;
                               });
  return out;
}

}  // namespace dfgate

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
#include "dfgate/noise.hpp"
#include "dfgate/optimizer.hpp"
#include "dfgate/pulses.hpp"
#include "dfgate/spin.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef DFGATE_BUILD_ID
#define DFGATE_BUILD_ID "dfgate-0.1.0"
#endif

namespace dfgate::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Bad flags, unreadable input or an unwritable output.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::string format_g(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Writes via a sibling temp file and rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + path.string() + "'");
    f << text;
    f.close();
    if (!f) throw UsageError("cannot write '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw UsageError("cannot write '" + path.string() + "'");
  }
}

inline std::filesystem::path manifest_path(const std::filesystem::path& output) {
  std::filesystem::path m = output;
  m += ".manifest.json";
  return m;
}

inline Json manifest(const std::string& command, Json config, std::uint64_t seed) {
  Json m;
  m["command"] = command;
  m["config"] = std::move(config);
  m["seed"] = seed;
  m["build"] = DFGATE_BUILD_ID;
  m["timestamp"] = utc_timestamp();
  return m;
}

inline Json to_json(const PulseParameters& p) {
  Json j;
  const auto a = p.as_array();
  for (std::size_t k = 0; k < 6; ++k) j[std::string(PulseParameters::kNames[k])] = a[k];
  return j;
}

/// Six named theta keys, all finite numbers; no other keys.
inline PulseParameters parameters_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("parameter file must hold a JSON object");
  std::array<double, 6> a{};
  for (std::size_t k = 0; k < 6; ++k) {
    const std::string key(PulseParameters::kNames[k]);
    if (!j.contains(key) || !j.at(key).is_number())
      throw UsageError("missing or non-numeric '" + key + "'");
    a[k] = j.at(key).get<double>();
  }
  for (const auto& item : j.items())
    if (std::find_if(PulseParameters::kNames.begin(), PulseParameters::kNames.end(),
                     [&](std::string_view n) { return item.key() == n; }) ==
        PulseParameters::kNames.end())
      throw UsageError("unknown parameter key '" + item.key() + "'");
  const auto p = PulseParameters::from_array(a);
  if (!p.finite()) throw UsageError("parameters must be finite");
  return p;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
}

/// Empty path selects the builtin reference parameters.
inline PulseParameters load_parameters(const std::string& path) {
  return path.empty() ? table1_parameters() : parameters_from_json(read_json_file(path));
}

inline Json to_json(const SearchConfig& c) {
  Json j;
  j["population"] = c.population;
  j["generations"] = c.generations;
  j["tournament_size"] = c.tournament_size;
  j["crossover_prob"] = c.crossover_prob;
  j["mutation_prob"] = c.mutation_prob;
  j["mutation_sigma"] = c.mutation_sigma;
  j["elite_count"] = c.elite_count;
  j["restarts"] = c.restarts;
  j["nm_max_iter"] = c.nm_max_iter;
  j["nm_tol_x"] = c.nm_tol_x;
  j["nm_tol_f"] = c.nm_tol_f;
  j["nm_initial_step"] = c.nm_initial_step;
  j["leakage_weight"] = c.leakage_weight;
  j["seed"] = c.seed;
  j["space"] = c.space == WorkingSpace::Reduced ? "reduced" : "full";
  return j;
}

/// Overlays the keys present in `j` onto `c`.
inline SearchConfig search_config_from_json(const Json& j, SearchConfig c = {}) {
  if (!j.is_object()) throw UsageError("search config must hold a JSON object");
  try {
    for (const auto& item : j.items()) {
      const auto& k = item.key();
      const auto& v = item.value();
      if (k == "population") c.population = v.get<int>();
      else if (k == "generations") c.generations = v.get<int>();
      else if (k == "tournament_size") c.tournament_size = v.get<int>();
      else if (k == "crossover_prob") c.crossover_prob = v.get<double>();
      else if (k == "mutation_prob") c.mutation_prob = v.get<double>();
      else if (k == "mutation_sigma") c.mutation_sigma = v.get<double>();
      else if (k == "elite_count") c.elite_count = v.get<int>();
      else if (k == "restarts") c.restarts = v.get<int>();
      else if (k == "nm_max_iter") c.nm_max_iter = v.get<int>();
      else if (k == "nm_tol_x") c.nm_tol_x = v.get<double>();
      else if (k == "nm_tol_f") c.nm_tol_f = v.get<double>();
      else if (k == "nm_initial_step") c.nm_initial_step = v.get<double>();
      else if (k == "leakage_weight") c.leakage_weight = v.get<double>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "space") {
        const auto s = v.get<std::string>();
        if (s == "reduced") c.space = WorkingSpace::Reduced;
        else if (s == "full") c.space = WorkingSpace::Full;
        else throw UsageError("space must be 'reduced' or 'full'");
      } else {
        throw UsageError("unknown search config key '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad search config value: ") + e.what());
  }
  return c;
}

/// "lo:hi:count", inclusive endpoints.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:count");
  try {
    std::size_t used = 0;
    const double lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw UsageError("bad grid bound");
    const double hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw UsageError("bad grid bound");
    const int count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw UsageError("bad grid count");
    if (lo < 0.0) throw UsageError("grid strengths must be >= 0");
    return linear_grid(lo, hi, count);
  } catch (const std::logic_error&) {
    throw UsageError("grid must be lo:hi:count");
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

/// "lo,hi".
inline FitWindow parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("fit window must be lo,hi");
  try {
    FitWindow w{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    if (w.hi < w.lo) throw UsageError("fit window upper bound below lower bound");
    return w;
  } catch (const std::logic_error&) {
    throw UsageError("fit window must be lo,hi");
  }
}

inline EncodingKind parse_encoding(int flag) {
  if (flag == 3) return EncodingKind::ThreeQubit;
  if (flag == 4) return EncodingKind::FourQubit;
  throw UsageError("encoding must be 3 or 4");
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string params;  // empty: builtin reference set
  std::string encoding = "both";
  std::string json_out;
};

struct VerifyReport {
  PulseParameters params;
  std::optional<double> fm4, leak4, leak3;
  std::vector<std::pair<GaugeBlockLabel, double>> block_fm;
  double gate_time = 0.0;
  double alpha = 0.0;
  bool pass = false;
};

inline constexpr double kVerifyThreshold = 1e-10;

inline VerifyReport verify_gate(const PulseParameters& p, bool four, bool three) {
  VerifyReport r;
  r.params = p;
  const CompiledSequence seq = compile_sequence(p);
  r.alpha = seq.alpha;
  r.gate_time = gate_time(p);
  r.pass = true;
  if (four) {
    const auto layout = EncodingLayout::standard(EncodingKind::FourQubit);
    const Operator u = gate_unitary(seq, layout);
    const LogicalBasis basis = pair_basis(layout);
    r.fm4 = fm_objective(project_to_logical(u, basis));
    r.leak4 = leakage(u, basis);
    r.pass = r.pass && *r.fm4 < kVerifyThreshold && *r.leak4 < kVerifyThreshold;
  }
  if (three) {
    const auto layout = EncodingLayout::standard(EncodingKind::ThreeQubit);
    const Operator u = gate_unitary(seq, layout);
    r.leak3 = leakage(u, pair_basis(layout));
    r.pass = r.pass && *r.leak3 < kVerifyThreshold;
    for (const auto& label : kGaugeBlocks) {
      const double fm = fm_objective(project_to_logical(u, gauge_block_basis(layout, label)));
      r.block_fm.emplace_back(label, fm);
      r.pass = r.pass && fm < kVerifyThreshold;
    }
  }
  return r;
}

inline std::string block_name(const GaugeBlockLabel& l) {
  return "(" + std::to_string(l.s_total) + "," + std::to_string(l.m_total) + ")";
}

inline Json to_json(const VerifyReport& r) {
  Json j;
  j["parameters"] = to_json(r.params);
  if (r.fm4) j["fm4"] = *r.fm4;
  if (r.leak4) j["L4"] = *r.leak4;
  if (r.leak3) j["L3"] = *r.leak3;
  if (!r.block_fm.empty()) {
    Json b;
    for (const auto& [label, fm] : r.block_fm) b[block_name(label)] = fm;
    j["fm3_blocks"] = b;
  }
  j["gate_time"] = r.gate_time;
  j["alpha"] = r.alpha;
  j["threshold"] = kVerifyThreshold;
  j["pass"] = r.pass;
  return j;
}

inline int verify_command(const VerifyOptions& o, std::ostream& out) {
  if (o.encoding != "3" && o.encoding != "4" && o.encoding != "both")
    throw UsageError("encoding must be 3, 4 or both");
  const PulseParameters p = load_parameters(o.params);
  const VerifyReport r = verify_gate(p, o.encoding != "3", o.encoding != "4");
  out << "parameters " << (o.params.empty() ? "reference" : o.params) << '\n';
  if (r.fm4) out << "fm4 " << format_g(*r.fm4, 6) << '\n';
  if (r.leak4) out << "L4 " << format_g(*r.leak4, 6) << '\n';
  if (r.leak3) out << "L3 " << format_g(*r.leak3, 6) << '\n';
  for (const auto& [label, fm] : r.block_fm)
    out << "fm3" << block_name(label) << ' ' << format_g(fm, 6) << '\n';
  out << "T " << std::fixed << std::setprecision(6) << r.gate_time << '\n';
  out << "alpha " << r.alpha << '\n' << std::defaultfloat;
  out << (r.pass ? "PASS" : "FAIL") << '\n';
  if (!o.json_out.empty()) {
    write_atomic(o.json_out, to_json(r).dump(2) + "\n");
    Json cfg{{"params", o.params.empty() ? "reference" : o.params}, {"encoding", o.encoding},
             {"parameters", to_json(p)}};
    write_atomic(manifest_path(o.json_out), manifest("verify", cfg, 0).dump(2) + "\n");
  }
  return r.pass ? kPass : kFail;
}

// ---------------------------------------------------------------- search

struct SearchOptions {
  std::string template_text = SequenceTemplate::working().name();
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<int> generations;
  std::optional<int> population;
  std::string output;
};

inline constexpr double kSearchThreshold = 1e-8;

inline Json to_json(const SearchResult& r) {
  Json j;
  j["theta"] = r.theta;
  j["fm"] = r.fm;
  j["leakage"] = r.leakage;
  j["objective"] = r.objective;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  return j;
}

inline int search_command(const SearchOptions& o, std::ostream& out) {
  SequenceTemplate t;
  try {
    t = SequenceTemplate::parse(o.template_text);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("infeasible template: ") + e.what());
  }
  SearchConfig c = o.config.empty() ? SearchConfig{} : search_config_from_json(read_json_file(o.config));
  if (o.seed) c.seed = *o.seed;
  if (o.restarts) c.restarts = *o.restarts;
  if (o.generations) c.generations = *o.generations;
  if (o.population) c.population = *o.population;
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const auto outcome = run_search(t, c, EncodingLayout::standard(EncodingKind::FourQubit));
  const SearchResult& best = outcome.best;
  const bool pass = best.fm < kSearchThreshold && best.leakage < kSearchThreshold;

  Json j;
  j["template"] = t.name();
  j["best"] = to_json(best);
  if (auto p = best.parameters(t)) {
    j["parameters"] = to_json(*p);
    j["gate_time"] = gate_time(*p);
    j["alpha"] = p->theta_box != 0.0 ? p->theta_ring / p->theta_box : 0.0;
  }
  long evaluations = 0;
  Json restarts = Json::array();
  for (const auto& r : outcome.restarts) {
    restarts.push_back(to_json(r));
    evaluations += r.evaluations;
  }
  j["restarts"] = restarts;
  j["evaluations"] = evaluations;
  j["pass"] = pass;

  if (o.output.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_atomic(o.output, j.dump(2) + "\n");
    Json cfg = to_json(c);
    cfg["template"] = t.name();
    write_atomic(manifest_path(o.output), manifest("search", cfg, c.seed).dump(2) + "\n");
    out << "template " << t.name() << '\n'
        << "fm " << format_g(best.fm, 6) << '\n'
        << "leakage " << format_g(best.leakage, 6) << '\n'
        << "evaluations " << evaluations << '\n'
        << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------- noise

struct NoiseOptions {
  std::string kind = "coupling";
  int encoding = 4;
  std::string grid;
  int samples = 250;
  std::uint64_t seed = 1;
  std::string jitter = "six";
  std::string window;
  std::string params;
  std::string output;
};

inline NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "coupling") return NoiseKind::CouplingJitter;
  if (s == "collective") return NoiseKind::MagneticCollective;
  if (s == "individual") return NoiseKind::MagneticIndividual;
  throw UsageError("kind must be coupling, collective or individual");
}

/// CSV body, one row per point, then the fit line.
inline std::string sweep_csv(std::span<const SweepPoint> points, FitWindow window) {
  std::string s = "strength,mean_fp,stderr_fp,mean_leakage,p_e_bound\n";
  for (const auto& p : points)
    s += format_g(p.strength) + ',' + format_g(p.mean_fp) + ',' + format_g(p.stderr_fp) + ',' +
         format_g(p.mean_leakage) + ',' + format_g(p.p_e_bound) + '\n';
  std::string c = "nan";
  try {
    c = format_g(quadratic_fit(points, window));
  } catch (const InvalidArgument&) {
  }
  s += "# fit c=" + c + " window=" + format_g(window.lo) + ',' + format_g(window.hi) + '\n';
  return s;
}

inline int noise_command(const NoiseOptions& o, std::ostream& out) {
  NoiseConfig c;
  c.kind = parse_noise_kind(o.kind);
  c.encoding = parse_encoding(o.encoding);
  c.strengths = parse_grid(o.grid);
  c.samples = o.samples;
  c.seed = o.seed;
  if (o.jitter == "six") c.jitter = JitterModel::SixParameter;
  else if (o.jitter == "five") c.jitter = JitterModel::FivePulse;
  else throw UsageError("jitter must be six or five");
  c.fit_window = o.window.empty() ? NoiseConfig::default_fit_window(c.kind) : parse_window(o.window);
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (o.output.empty()) throw UsageError("--output is required");
  const auto dir = std::filesystem::path(o.output).parent_path();
  if (!dir.empty() && !std::filesystem::is_directory(dir))
    throw UsageError("output directory '" + dir.string() + "' does not exist");
  const PulseParameters p = load_parameters(o.params);

  const auto points = noise_sweep(c, p, EncodingLayout::standard(c.encoding));
  const std::string csv = sweep_csv(points, c.fit_window);
  write_atomic(o.output, csv);

  Json cfg;
  cfg["kind"] = o.kind;
  cfg["encoding"] = o.encoding;
  cfg["strengths"] = c.strengths;
  cfg["samples"] = c.samples;
  cfg["jitter"] = to_string(c.jitter);
  cfg["fit_window"] = {c.fit_window.lo, c.fit_window.hi};
  cfg["parameters"] = to_json(p);
  cfg["threads"] = worker_count();
  write_atomic(manifest_path(o.output), manifest("noise", cfg, c.seed).dump(2) + "\n");
  out << "wrote " << points.size() << " rows to " << o.output << '\n'
      << csv.substr(csv.rfind('#'));
  return kPass;
}

// ---------------------------------------------------------------- split

struct SplitOptions {
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  int n = 0;
  std::string params;
};

inline constexpr double kConstraintTol = 1e-12;

inline int split_command(const SplitOptions& o, std::ostream& out, std::ostream& err) {
  if (o.n < 0) throw UsageError("n must be non-negative");
  const PulseParameters p = load_parameters(o.params);
  AlphaSplit s;
  try {
    s = alpha_split(o.alpha_a, o.alpha_b, o.n, p);
  } catch (const InfeasibleSplit& e) {
    err << "infeasible split: " << e.what() << '\n';
    out << "alpha_n " << format_g(p.theta_ring / (p.theta_box + kTwoPi * o.n), 8) << '\n'
        << "FAIL\n";
    return kFail;
  }
  const double box_residual = std::abs(s.t_a + s.t_b - s.box_n);
  const double ring_residual =
      std::abs(o.alpha_a * s.t_a + o.alpha_b * s.t_b - p.theta_ring);
  const bool ok = box_residual <= kConstraintTol && ring_residual <= kConstraintTol;
  out << std::setprecision(8) << "alpha_n " << s.alpha_n << '\n'
      << "t_a " << s.t_a << '\n'
      << "t_b " << s.t_b << '\n'
      << "added_time " << s.t_a + s.t_b - p.theta_box << '\n'
      << "box_residual " << format_g(box_residual, 3) << '\n'
      << "ring_residual " << format_g(ring_residual, 3) << '\n'
      << (ok ? "PASS" : "FAIL") << '\n'
      << std::defaultfloat;
  return ok ? kPass : kFail;
}

// ---------------------------------------------------------------- spectrum

inline int spectrum_command(double jsc, std::ostream& out) {
  if (!(jsc > 0.0) || !std::isfinite(jsc)) throw UsageError("jsc must be positive");
  const std::array<int, 4> sites{1, 2, 3, 4};
  const Operator h = supercoherent_hamiltonian(jsc, sites, 4);
  const auto levels = cluster_levels(HermitianSpectrum(h).values(), 1e-9 * jsc);
  out << std::setprecision(10);
  for (const auto& l : levels) out << "level " << l.value << " x" << l.multiplicity << '\n';
  const double gap = levels.size() > 1 ? levels[1].value - levels[0].value : 0.0;
  out << "gap " << gap << '\n';
  double residual = 0.0;
  for (const auto& x : states::four_qubit_logical())
    residual = std::max(residual, (h * x - levels.front().value * x).norm());
  out << "logical_residual " << format_g(residual, 3) << '\n' << std::defaultfloat;
  const bool ok = levels.front().multiplicity == 2 && residual < 1e-12 * std::max(1.0, jsc);
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kPass : kFail;
}

// ---------------------------------------------------------------- entry

/// Runs one subcommand; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exchange-only CZ gate toolkit", "dfgate"};
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Check a parameter set against the CZ class");
  v->add_option("--params", verify.params, "JSON parameter file (default: reference set)");
  v->add_option("--encoding", verify.encoding, "3, 4 or both");
  v->add_option("--json", verify.json_out, "Write the report as JSON");

  SearchOptions search;
  auto* s = app.add_subcommand("search", "Genetic search plus simplex refinement");
  s->add_option("--template", search.template_text, "Comma-separated pulse labels");
  s->add_option("--config", search.config, "JSON search config");
  s->add_option("--seed", search.seed, "Master seed");
  s->add_option("--restarts", search.restarts, "Independent restarts");
  s->add_option("--generations", search.generations, "Generations per restart");
  s->add_option("--population", search.population, "Population size");
  s->add_option("--output", search.output, "JSON result path");

  NoiseOptions noise;
  auto* n = app.add_subcommand("noise", "Monte-Carlo noise sweep");
  n->add_option("--kind", noise.kind, "coupling, collective or individual");
  n->add_option("--encoding", noise.encoding, "3 or 4");
  n->add_option("--grid", noise.grid, "lo:hi:count")->required();
  n->add_option("--samples", noise.samples, "Samples per strength");
  n->add_option("--seed", noise.seed, "Master seed");
  n->add_option("--jitter", noise.jitter, "six or five");
  n->add_option("--fit-window", noise.window, "lo,hi");
  n->add_option("--params", noise.params, "JSON parameter file (default: reference set)");
  n->add_option("--output", noise.output, "CSV path")->required();

  SplitOptions split;
  auto* sp = app.add_subcommand("split", "Split the symmetric pulse between two ring ratios");
  sp->add_option("--alpha-a", split.alpha_a, "Larger ring ratio")->required();
  sp->add_option("--alpha-b", split.alpha_b, "Smaller ring ratio")->required();
  sp->add_option("--n", split.n, "Extra 2 pi turns of the box phase");
  sp->add_option("--params", split.params, "JSON parameter file (default: reference set)");

  double jsc = 1.0;
  auto* sc = app.add_subcommand("spectrum", "Supercoherent Hamiltonian spectrum");
  sc->add_option("--jsc", jsc, "Coupling J_SC");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "dfgate: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (v->parsed()) return verify_command(verify, out);
    if (s->parsed()) return search_command(search, out);
    if (n->parsed()) return noise_command(noise, out);
    if (sp->parsed()) return split_command(split, out, err);
    return spectrum_command(jsc, out);
  } catch (const UsageError& e) {
    err << "dfgate: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "dfgate: " << e.what() << '\n';
    return kFail;
  }
}

}  // namespace dfgate::cli

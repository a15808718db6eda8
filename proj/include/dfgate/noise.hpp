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
#include "dfgate/spin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dfgate {

enum class NoiseKind { CouplingJitter, MagneticCollective, MagneticIndividual };

inline std::string_view to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::CouplingJitter: return "coupling";
    case NoiseKind::MagneticCollective: return "collective";
    case NoiseKind::MagneticIndividual: return "individual";
  }
  return "?";
}

/// How coupling jitter enters: on the six search phases before compilation,
/// or on the five compiled pulse phases with alpha held fixed.
enum class JitterModel { SixParameter, FivePulse };

inline std::string_view to_string(JitterModel m) {
  return m == JitterModel::SixParameter ? "six" : "five";
}

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct NoiseConfig {
  NoiseKind kind = NoiseKind::CouplingJitter;
  std::vector<double> strengths;
  int samples = 250;
  std::uint64_t seed = 1;
  EncodingKind encoding = EncodingKind::FourQubit;
  JitterModel jitter = JitterModel::SixParameter;
  FitWindow fit_window = default_fit_window(NoiseKind::CouplingJitter);

  static FitWindow default_fit_window(NoiseKind kind) {
    return kind == NoiseKind::CouplingJitter ? FitWindow{0.0, 0.05}
                                             : FitWindow{0.0, 0.01};
  }

  void validate() const {
    if (samples < 1) throw InvalidArgument("samples must be >= 1");
    for (double s : strengths)
      if (!(s >= 0.0) || !std::isfinite(s))
        throw InvalidArgument("noise strengths must be finite and >= 0");
  }
};

/// Quasi-static field per target, in units of J. Each target is a set of
/// sites sharing one field vector.
struct FieldAssignment {
  std::vector<Eigen::Vector3d> fields;
  std::vector<std::vector<int>> targets;
};

/// Post-selected process fidelity and leakage of one noisy run.
struct SampleOutcome {
  double fp = 1.0;
  double leakage = 0.0;
};

struct SweepPoint {
  double strength = 0.0;
  double mean_fp = 1.0;
  double stderr_fp = 0.0;
  double mean_leakage = 0.0;
  /// Mean of 1 - (1 - L) Fp over samples.
  double p_e_bound = 0.0;
};

/// iid N(0, epsilon^2) phase errors.
template <class Rng>
std::vector<double> sample_coupling_noise(double epsilon, Rng& rng, std::size_t count = 6) {
  if (epsilon < 0.0) throw InvalidArgument("epsilon must be >= 0");
  std::vector<double> d(count, 0.0);
  if (epsilon == 0.0) return d;
  std::normal_distribution<double> normal(0.0, epsilon);
  for (auto& x : d) x = normal(rng);
  return d;
}

/// Collective: one field per encoded qubit, shared by its sites. Individual:
/// one field per physical site. Components are iid N(0, b^2).
template <class Rng>
FieldAssignment sample_magnetic_fields(double b_over_j, NoiseKind mode,
                                       const EncodingLayout& layout, Rng& rng) {
  if (b_over_j < 0.0) throw InvalidArgument("field strength must be >= 0");
  if (mode == NoiseKind::CouplingJitter)
    throw InvalidArgument("coupling jitter has no field assignment");
  FieldAssignment f;
  if (mode == NoiseKind::MagneticCollective) {
    f.targets = {layout.sites_a, layout.sites_b};
  } else {
    for (int s : layout.all_sites()) f.targets.push_back({s});
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t t = 0; t < f.targets.size(); ++t) {
    Eigen::Vector3d v;
    for (int c = 0; c < 3; ++c) v[c] = b_over_j * normal(rng);
    f.fields.push_back(v);
  }
  return f;
}

/// sum_targets b . sigma over the target's sites.
inline Operator field_operator(const FieldAssignment& f, int qubits) {
  const int dim = dimension_for(qubits);
  Operator h = Operator::Zero(dim, dim);
  for (std::size_t t = 0; t < f.targets.size(); ++t) {
    const auto& b = f.fields[t];
    for (int s : f.targets[t]) {
      h += b[0] * pauli_op(Axis::X, s, qubits);
      h += b[1] * pauli_op(Axis::Y, s, qubits);
      h += b[2] * pauli_op(Axis::Z, s, qubits);
    }
  }
  return h;
}

inline PulseParameters perturbed(const PulseParameters& p, std::span<const double> delta) {
  if (delta.size() != 6) throw InvalidArgument("six phase errors expected");
  auto a = p.as_array();
  for (std::size_t k = 0; k < 6; ++k) a[k] += delta[k];
  return PulseParameters::from_array(a);
}

inline CompiledSequence perturbed(CompiledSequence seq, std::span<const double> delta) {
  if (delta.size() != 5) throw InvalidArgument("five pulse errors expected");
  for (std::size_t k = 0; k < 5; ++k) {
    seq.pulses[k].theta += delta[k];
    seq.pulses[k].duration += delta[k];
  }
  return seq;
}

/// Gate with phase errors on the six pre-compilation parameters.
inline Operator noisy_gate_unitary(const PulseParameters& p, std::span<const double> delta,
                                   const EncodingLayout& layout) {
  return gate_unitary(perturbed(p, delta), layout);
}

/// Gate with a static field present during all five pulses, back to back.
inline Operator noisy_gate_unitary(const PulseParameters& p, const FieldAssignment& fields,
                                   const EncodingLayout& layout) {
  const CompiledSequence seq = compile_sequence(p);
  const Operator f = field_operator(fields, layout.qubits());
  const int dim = dimension_for(layout.qubits());
  Operator u = Operator::Identity(dim, dim);
  for (const auto& pulse : seq.pulses) {
    const auto alpha = pulse.label == PulseLabel::Symmetric
                           ? std::optional<double>(pulse.alpha)
                           : std::nullopt;
    u = evolve(named_hamiltonian(pulse.label, layout, alpha) + f, pulse.duration) * u;
  }
  return u;
}

/// Process matrix in the two-qubit Pauli basis A_m = s_a (x) s_b, m = 4a + b,
/// with a_m = tr(A_m^dagger E1) / 4 and chi = a a^dagger / tr(a a^dagger).
struct ProcessTomography {
  Eigen::Matrix<cplx, 16, 16> chi;
  double fp = 0.0;
  double trace_weight = 0.0;
};

namespace detail {

inline const std::array<Gate4, 16>& pauli_basis_4() {
  static const std::array<Gate4, 16> basis = [] {
    std::array<Eigen::Matrix2cd, 4> s;
    s[0] = Eigen::Matrix2cd::Identity();
    s[1] << 0.0, 1.0, 1.0, 0.0;
    s[2] << 0.0, -kI, kI, 0.0;
    s[3] << 1.0, 0.0, 0.0, -1.0;
    std::array<Gate4, 16> out;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        Gate4 m;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              for (int l = 0; l < 2; ++l)
                m(2 * i + k, 2 * j + l) = s[static_cast<std::size_t>(a)](i, j) *
                                          s[static_cast<std::size_t>(b)](k, l);
        out[static_cast<std::size_t>(4 * a + b)] = m;
      }
    return out;
  }();
  return basis;
}

inline Eigen::Matrix<cplx, 16, 1> pauli_coefficients(const Gate4& e) {
  Eigen::Matrix<cplx, 16, 1> a;
  const auto& basis = pauli_basis_4();
  for (std::size_t m = 0; m < 16; ++m)
    a[static_cast<Eigen::Index>(m)] = (basis[m].adjoint() * e).trace() / 4.0;
  return a;
}

}  // namespace detail

/// chi of a single Kraus operator and its fidelity with CZ, <c|chi|c>.
inline ProcessTomography chi_and_fidelity(const Gate4& e1) {
  if (e1.norm() < 1e-14) throw InvalidArgument("Kraus operator is zero");
  static const Eigen::Matrix<cplx, 16, 1> c = [] {
    Eigen::Matrix<cplx, 16, 1> v = detail::pauli_coefficients(cz_gate());
    return Eigen::Matrix<cplx, 16, 1>(v / v.norm());
  }();
  const Eigen::Matrix<cplx, 16, 1> a = detail::pauli_coefficients(e1);
  ProcessTomography t;
  t.trace_weight = a.squaredNorm();
  t.chi = a * a.adjoint() / t.trace_weight;
  t.fp = std::clamp((c.adjoint() * t.chi * c)(0, 0).real(), 0.0, 1.0);
  return t;
}

class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

/// e^{i phase} V^dagger (B^dagger U B) V D for one 4-dim logical block.
inline Gate4 logical_kraus(const Operator& u, const LogicalBasis& block,
                           const LocalFrame& frame) {
  if (block.size() != 4) throw InvalidArgument("logical block must have 4 columns");
  return frame.apply(project_to_logical(u, block));
}

/// Logical blocks, their calibrated frames, and the leakage basis for one
/// encoding. Blocks are tried in order until a projection is non-negligible.
class LogicalChannel {
 public:
  static constexpr double kZeroProjection = 1e-8;

  /// Calibrates on the image of the pair basis under the noiseless gate.
  LogicalChannel(const EncodingLayout& layout, const Operator& noiseless_image)
      : leakage_basis_(pair_basis(layout)) {
    if (layout.kind == EncodingKind::FourQubit) {
      blocks_.push_back(leakage_basis_);
      offsets_.push_back(0);
    } else {
      // Fallback order; pair_basis stores blocks in kGaugeBlocks order.
      for (GaugeBlockLabel label : {GaugeBlockLabel{1, 1}, GaugeBlockLabel{1, -1},
                                    GaugeBlockLabel{1, 0}, GaugeBlockLabel{0, 0}}) {
        const auto it = std::find(kGaugeBlocks.begin(), kGaugeBlocks.end(), label);
        offsets_.push_back(4 * static_cast<Eigen::Index>(it - kGaugeBlocks.begin()));
        blocks_.push_back(gauge_block_basis(layout, label));
        labels_.push_back(label);
      }
    }
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      frames_.push_back(calibrate_local_frame(block_projection(noiseless_image, b)));
  }

  const LogicalBasis& leakage_basis() const { return leakage_basis_; }
  const std::vector<LogicalBasis>& blocks() const { return blocks_; }
  const std::vector<LocalFrame>& frames() const { return frames_; }

  /// B_block^dagger U B_block from the image U B_pair.
  Gate4 block_projection(const Operator& image, std::size_t block) const {
    return blocks_[block].columns.adjoint() * image.middleCols(offsets_[block], 4);
  }

  /// E1 from the image of the pair basis, using the first non-zero block.
  Gate4 kraus(const Operator& image) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const Gate4 p = block_projection(image, b);
      if (p.norm() >= kZeroProjection) return frames_[b].apply(p);
    }
    throw DegenerateProjection("every logical block projects to zero");
  }

  SampleOutcome score(const Operator& image) const {
    return {chi_and_fidelity(kraus(image)).fp, leakage_of_image(image, leakage_basis_)};
  }

 private:
  LogicalBasis leakage_basis_;
  std::vector<LogicalBasis> blocks_;
  std::vector<Eigen::Index> offsets_;
  std::vector<GaugeBlockLabel> labels_;
  std::vector<LocalFrame> frames_;
};

/// Everything needed to score noisy runs of one gate in one encoding.
class NoiseLab {
 public:
  NoiseLab(const PulseParameters& params, const EncodingLayout& layout)
      : params_(params),
        layout_(layout),
        compiled_(compile_sequence(params)),
        bank_(layout, pair_basis(layout), WorkingSpace::Full),
        channel_(layout, bank_.compiled_image(compiled_)) {
    for (const auto& pulse : compiled_.pulses) {
      const auto alpha = pulse.label == PulseLabel::Symmetric
                             ? std::optional<double>(pulse.alpha)
                             : std::nullopt;
      local_pulses_.push_back(local_pulse_hamiltonian(pulse.label, alpha));
      duration_ += pulse.duration;
    }
    for (int s : layout.all_sites())
      if (std::find(layout.gate_sites.begin(), layout.gate_sites.end(), s) ==
          layout.gate_sites.end())
        spectators_.push_back(s);
  }

  const LogicalChannel& channel() const { return channel_; }
  const EncodingLayout& layout() const { return layout_; }

  Operator coupling_image(std::span<const double> delta, JitterModel model) const {
    if (model == JitterModel::SixParameter)
      return bank_.compiled_image(compile_sequence(perturbed(params_, delta)));
    return bank_.compiled_image(perturbed(compiled_, delta));
  }

  /// Pulses touch only the gate sites, so a static field factorizes into a
  /// 4-site propagator and independent precessions of the spectators.
  Operator magnetic_image(const FieldAssignment& fields) const {
    const int n = layout_.qubits();
    std::vector<Eigen::Vector3d> site_field(static_cast<std::size_t>(n) + 1,
                                            Eigen::Vector3d::Zero());
    for (std::size_t t = 0; t < fields.targets.size(); ++t)
      for (int s : fields.targets[t]) site_field[static_cast<std::size_t>(s)] += fields.fields[t];

    FieldAssignment local;
    for (int k = 0; k < 4; ++k) {
      local.targets.push_back({k + 1});
      local.fields.push_back(
          site_field[static_cast<std::size_t>(layout_.gate_sites[static_cast<std::size_t>(k)])]);
    }
    const Operator f = field_operator(local, 4);
    Operator w = Operator::Identity(16, 16);
    for (std::size_t k = 0; k < local_pulses_.size(); ++k)
      w = evolve(local_pulses_[k] + f, compiled_.pulses[k].duration) * w;

    Operator x = apply_local(w, layout_.gate_sites, n, bank_.start());
    for (int s : spectators_) {
      FieldAssignment one{{site_field[static_cast<std::size_t>(s)]}, {{1}}};
      x = apply_local(evolve(field_operator(one, 1), duration_), std::array<int, 1>{s}, n, x);
    }
    return x;
  }

  /// One Monte-Carlo draw at noise strength `strength` from `rng`.
  template <class Rng>
  SampleOutcome sample(NoiseKind kind, double strength, JitterModel model, Rng& rng) const {
    if (kind == NoiseKind::CouplingJitter) {
      const auto delta =
          sample_coupling_noise(strength, rng, model == JitterModel::SixParameter ? 6 : 5);
      return channel_.score(coupling_image(delta, model));
    }
    return channel_.score(magnetic_image(sample_magnetic_fields(strength, kind, layout_, rng)));
  }

 private:
  PulseParameters params_;
  EncodingLayout layout_;
  CompiledSequence compiled_;
  PulseBank bank_;
  LogicalChannel channel_;
  std::vector<Operator> local_pulses_;
  std::vector<int> spectators_;
  double duration_ = 0.0;
};

/// Monte-Carlo sweep. Sample j at strength index s draws from stream
/// (seed, s, j), so results do not depend on the worker count.
inline std::vector<SweepPoint> noise_sweep(const NoiseConfig& config,
                                           const PulseParameters& params,
                                           const EncodingLayout& layout) {
  config.validate();
  if (layout.kind != config.encoding)
    throw InvalidArgument("layout encoding does not match the noise config");
  const NoiseLab lab(params, layout);
  const std::size_t n_strength = config.strengths.size();
  const auto n_samples = static_cast<std::size_t>(config.samples);
  std::vector<SampleOutcome> outcomes(n_strength * n_samples);
  parallel_for(outcomes.size(), [&](std::size_t flat) {
    const std::size_t s = flat / n_samples;
    const std::size_t j = flat % n_samples;
    auto rng = derive_stream(config.seed, {s, j});
    outcomes[flat] = lab.sample(config.kind, config.strengths[s], config.jitter, rng);
  });

  std::vector<SweepPoint> points;
  for (std::size_t s = 0; s < n_strength; ++s) {
    double sum_fp = 0.0;
    double sum_fp2 = 0.0;
    double sum_leak = 0.0;
    double sum_pe = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
      const auto& o = outcomes[s * n_samples + j];
      sum_fp += o.fp;
      sum_fp2 += o.fp * o.fp;
      sum_leak += o.leakage;
      sum_pe += 1.0 - (1.0 - o.leakage) * o.fp;
    }
    const double n = static_cast<double>(n_samples);
    SweepPoint p;
    p.strength = config.strengths[s];
    p.mean_fp = sum_fp / n;
    p.mean_leakage = sum_leak / n;
    p.p_e_bound = sum_pe / n;
    if (n_samples > 1) {
      const double var = std::max(0.0, (sum_fp2 - n * p.mean_fp * p.mean_fp) / (n - 1.0));
      p.stderr_fp = std::sqrt(var / n);
    }
    points.push_back(p);
  }
  return points;
}

/// Least-squares c in 1 - Fp = c s^2 over points with lo <= s <= hi.
inline double quadratic_fit(std::span<const SweepPoint> points, FitWindow window) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& p : points) {
    if (p.strength < window.lo || p.strength > window.hi) continue;
    const double s2 = p.strength * p.strength;
    num += (1.0 - p.mean_fp) * s2;
    den += s2 * s2;
  }
  if (den == 0.0) throw InvalidArgument("quadratic fit needs a non-zero strength in the window");
  return num / den;
}

/// Inclusive grid lo..hi with `count` points.
inline std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw InvalidArgument("grid count must be >= 1");
  if (hi < lo) throw InvalidArgument("grid upper bound below lower bound");
  std::vector<double> g;
  for (int k = 0; k < count; ++k)
    g.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
  return g;
}

}  // namespace dfgate

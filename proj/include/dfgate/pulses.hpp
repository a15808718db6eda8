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
#include "dfgate/spin.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dfgate {

enum class PulseLabel { Asymp, Parallel, Times, Box, Ring, Symmetric };

inline std::string_view to_string(PulseLabel label) {
  switch (label) {
    case PulseLabel::Asymp: return "asymp";
    case PulseLabel::Parallel: return "parallel";
    case PulseLabel::Times: return "times";
    case PulseLabel::Box: return "box";
    case PulseLabel::Ring: return "ring";
    case PulseLabel::Symmetric: return "symmetric";
  }
  return "?";
}

inline std::optional<PulseLabel> parse_pulse_label(std::string_view name) {
  for (auto l : {PulseLabel::Asymp, PulseLabel::Parallel, PulseLabel::Times,
                 PulseLabel::Box, PulseLabel::Ring, PulseLabel::Symmetric})
    if (to_string(l) == name) return l;
  return std::nullopt;
}

/// The six phases of the working sequence, in the order the unitaries are
/// multiplied: U_asymp1 U_parallel U_times U_box U_ring U_asymp2.
struct PulseParameters {
  double theta_asymp1 = 0.0;
  double theta_parallel = 0.0;
  double theta_times = 0.0;
  double theta_box = 0.0;
  double theta_ring = 0.0;
  double theta_asymp2 = 0.0;

  static constexpr std::array<std::string_view, 6> kNames{
      "theta_asymp1", "theta_parallel", "theta_times",
      "theta_box",    "theta_ring",     "theta_asymp2"};

  std::array<double, 6> as_array() const {
    return {theta_asymp1, theta_parallel, theta_times,
            theta_box,    theta_ring,     theta_asymp2};
  }

  static PulseParameters from_array(const std::array<double, 6>& t) {
    return {t[0], t[1], t[2], t[3], t[4], t[5]};
  }

  bool finite() const {
    for (double t : as_array())
      if (!std::isfinite(t)) return false;
    return true;
  }
};

/// Published CZ solution.
inline PulseParameters table1_parameters() {
  return {2.748893584737, 4.319689917260, 2.552544025744,
          3.730678055907, 0.589048619835, 0.785361375567};
}

struct CompiledPulse {
  PulseLabel label;
  double theta;
  double duration;  // units hbar / J_max
  double alpha;     // only meaningful for Symmetric
};

/// Five physical pulses in time order, earliest first.
struct CompiledSequence {
  std::array<CompiledPulse, 5> pulses;
  double alpha = 0.0;

  double total_time() const {
    double t = 0.0;
    for (const auto& p : pulses) t += p.duration;
    return t;
  }
};

/// Pair couplings J_ij in the order 12, 13, 14, 23, 24, 34 (gate-local
/// labels) plus the three ring coefficients.
struct GeneralRingCoefficients {
  std::array<double, 6> pair{};
  double c1234 = 0.0;
  double c1324 = 0.0;
  double c1342 = 0.0;
};

namespace detail {

struct GateExchanges {
  Operator e12, e13, e14, e23, e24, e34;
};

inline GateExchanges exchanges_on(const std::array<int, 4>& g, int n) {
  return {exchange_op(g[0], g[1], n), exchange_op(g[0], g[2], n),
          exchange_op(g[0], g[3], n), exchange_op(g[1], g[2], n),
          exchange_op(g[1], g[3], n), exchange_op(g[2], g[3], n)};
}

inline GateExchanges gate_exchanges(const EncodingLayout& layout) {
  layout.validate();
  return exchanges_on(layout.gate_sites, layout.qubits());
}

inline Operator pulse_from(PulseLabel label, const GateExchanges& e,
                           std::optional<double> alpha) {
  if ((label == PulseLabel::Symmetric) != alpha.has_value())
    throw InvalidArgument(
        "alpha must be supplied for the symmetric pulse and only for it");
  switch (label) {
    case PulseLabel::Asymp: return e.e12 + e.e34;
    case PulseLabel::Parallel: return e.e14 + e.e23;
    case PulseLabel::Times: return e.e13 + e.e24;
    case PulseLabel::Box: return e.e12 + e.e34 + e.e14 + e.e23;
    case PulseLabel::Ring: return e.e12 * e.e34 + e.e14 * e.e23 + e.e13 * e.e24;
    case PulseLabel::Symmetric:
      return e.e12 + e.e34 + e.e14 + e.e23 + e.e13 + e.e24 +
             *alpha * (e.e12 * e.e34 + e.e14 * e.e23 + e.e13 * e.e24);
  }
  throw InvalidArgument("unknown pulse label");
}

}  // namespace detail

/// Pulse Hamiltonian on the layout's gate sites (1..4 = gate_sites[0..3]):
///   asymp    = E12 + E34
///   parallel = E14 + E23
///   times    = E13 + E24
///   box      = asymp + parallel
///   ring     = E12 E34 + E14 E23 + E13 E24
///   symmetric(alpha) = box + times + alpha ring
inline Operator named_hamiltonian(PulseLabel label, const EncodingLayout& layout,
                                  std::optional<double> alpha = std::nullopt) {
  return detail::pulse_from(label, detail::gate_exchanges(layout), alpha);
}

/// The same pulse on a bare 4-site register, gate site k at site k + 1.
inline Operator local_pulse_hamiltonian(PulseLabel label,
                                        std::optional<double> alpha = std::nullopt) {
  return detail::pulse_from(label, detail::exchanges_on({1, 2, 3, 4}, 4), alpha);
}

/// Four-site exchange Hamiltonian with pair couplings and signed ring terms.
inline Operator general_ring_hamiltonian(const GeneralRingCoefficients& c,
                                         const EncodingLayout& layout) {
  const auto e = detail::gate_exchanges(layout);
  const Operator a = e.e12 * e.e34;
  const Operator b = e.e14 * e.e23;
  const Operator d = e.e13 * e.e24;
  Operator h = c.pair[0] * e.e12 + c.pair[1] * e.e13 + c.pair[2] * e.e14 +
               c.pair[3] * e.e23 + c.pair[4] * e.e24 + c.pair[5] * e.e34;
  h += c.c1234 * (a + b - d);
  h += c.c1324 * (d + b - a);
  h += c.c1342 * (d + a - b);
  return h;
}

/// Merges times/box/ring into one symmetric pulse plus a shortened times
/// pulse. alpha = theta_ring / theta_box.
inline CompiledSequence compile_sequence(const PulseParameters& p) {
  if (!p.finite()) throw InvalidArgument("pulse parameters must be finite");
  double alpha = 0.0;
  if (p.theta_box == 0.0) {
    if (p.theta_ring != 0.0)
      throw InvalidArgument("alpha undefined: theta_box = 0 with theta_ring != 0");
  } else {
    alpha = p.theta_ring / p.theta_box;
  }
  const double times_prime = wrap_phase(p.theta_times - p.theta_box);
  CompiledSequence seq;
  seq.alpha = alpha;
  seq.pulses = {{
      {PulseLabel::Asymp, p.theta_asymp2, p.theta_asymp2, 0.0},
      {PulseLabel::Symmetric, p.theta_box, p.theta_box, alpha},
      {PulseLabel::Times, times_prime, times_prime, 0.0},
      {PulseLabel::Parallel, p.theta_parallel, p.theta_parallel, 0.0},
      {PulseLabel::Asymp, p.theta_asymp1, p.theta_asymp1, 0.0},
  }};
  return seq;
}

inline Operator pulse_unitary(const CompiledPulse& pulse,
                              const EncodingLayout& layout) {
  const auto alpha = pulse.label == PulseLabel::Symmetric
                         ? std::optional<double>(pulse.alpha)
                         : std::nullopt;
  return evolve(named_hamiltonian(pulse.label, layout, alpha), pulse.theta);
}

/// Product of the compiled pulses, earliest pulse as the rightmost factor.
inline Operator gate_unitary(const CompiledSequence& seq,
                             const EncodingLayout& layout) {
  const int dim = dimension_for(layout.qubits());
  Operator u = Operator::Identity(dim, dim);
  for (const auto& pulse : seq.pulses) u = pulse_unitary(pulse, layout) * u;
  return u;
}

inline Operator gate_unitary(const PulseParameters& p,
                             const EncodingLayout& layout) {
  return gate_unitary(compile_sequence(p), layout);
}

/// Uncompiled form: six separate exponentials.
inline Operator six_exponential_unitary(const PulseParameters& p,
                                        const EncodingLayout& layout) {
  return evolve(named_hamiltonian(PulseLabel::Asymp, layout), p.theta_asymp1) *
         evolve(named_hamiltonian(PulseLabel::Parallel, layout), p.theta_parallel) *
         evolve(named_hamiltonian(PulseLabel::Times, layout), p.theta_times) *
         evolve(named_hamiltonian(PulseLabel::Box, layout), p.theta_box) *
         evolve(named_hamiltonian(PulseLabel::Ring, layout), p.theta_ring) *
         evolve(named_hamiltonian(PulseLabel::Asymp, layout), p.theta_asymp2);
}

/// Gate time in units hbar / J_max. The ring term runs concurrently with the
/// box term and adds no time.
inline double gate_time(const PulseParameters& p) {
  return p.theta_asymp1 + p.theta_parallel + p.theta_box + p.theta_asymp2 +
         wrap_phase(p.theta_times - p.theta_box);
}

class InfeasibleSplit : public Error {
 public:
  using Error::Error;
};

struct AlphaSplit {
  int n = 0;
  double alpha_n = 0.0;  // theta_ring / (theta_box + 2 pi n)
  double box_n = 0.0;    // theta_box + 2 pi n
  double t_a = 0.0;
  double t_b = 0.0;
};

/// Splits the symmetric pulse into two pulses with ring ratios alpha_a and
/// alpha_b (J = 1). Requires alpha_a > alpha_n > alpha_b.
inline AlphaSplit alpha_split(double alpha_a, double alpha_b, int n,
                              const PulseParameters& p) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  AlphaSplit s;
  s.n = n;
  s.box_n = p.theta_box + kTwoPi * n;
  if (s.box_n == 0.0) throw InfeasibleSplit("theta_box + 2 pi n is zero");
  s.alpha_n = p.theta_ring / s.box_n;
  if (!(alpha_a > s.alpha_n && s.alpha_n > alpha_b))
    throw InfeasibleSplit("need alpha_a > alpha(n) > alpha_b, got alpha_a = " +
                          std::to_string(alpha_a) + ", alpha(n) = " +
                          std::to_string(s.alpha_n) +
                          ", alpha_b = " + std::to_string(alpha_b));
  s.t_a = s.box_n * (s.alpha_n - alpha_b) / (alpha_a - alpha_b);
  s.t_b = s.box_n * (alpha_a - s.alpha_n) / (alpha_a - alpha_b);
  return s;
}

/// exp(-i theta (box + times + alpha ring)).
inline Operator symmetric_pulse(double theta, double alpha,
                                const EncodingLayout& layout) {
  return evolve(named_hamiltonian(PulseLabel::Symmetric, layout, alpha), theta);
}

}  // namespace dfgate

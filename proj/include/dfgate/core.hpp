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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dfgate {

using cplx = std::complex<double>;

// Dense operator on 2^n states. Site 1 is the most significant bit of the
// computational-basis index.
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Tolerances used by operator contracts.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Site index or qubit count outside the declared register.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Argument that breaks an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input that violates a mathematical contract (e.g. non-Hermitian generator).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

inline double max_abs(const Operator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Operator& h) {
  return max_abs(h - h.adjoint());
}

inline double unitarity_defect(const Operator& u) {
  return (u.adjoint() * u - Operator::Identity(u.cols(), u.cols())).norm();
}

inline Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

/// Wraps a phase into [0, 2pi).
inline double wrap_phase(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

inline int dimension_for(int qubits) { return 1 << qubits; }

}  // namespace dfgate

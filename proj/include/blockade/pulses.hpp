// Copyright 2026 The Blockade Chain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

#include "blockade/chain.hpp"
#include "blockade/error.hpp"

namespace blockade {

using Matrix2c = Eigen::Matrix2cd;

/// Three-pulse composite R(x1) R(x2) R(x1) that performs a pi rotation about
/// X in a two-level block detuned by 2*delta, where delta is the
/// half-detuning (2*J2 for the first transfer step).
struct PulseParameters {
  double x1 = 0.0;     ///< XY matrix element of the outer pulses (bond value x1/2)
  double theta = 0.0;  ///< tilt of the outer rotation axis, atan2(delta, x1)
  double x2 = 0.0;     ///< XY matrix element of the middle pulse (may be negative)
  double t_r1 = 0.0;   ///< duration of each outer pulse
  double t_r2 = 0.0;   ///< duration of the middle pulse
  double delta = 0.0;  ///< half-detuning the parameters were solved for

  double total_duration() const { return 2.0 * t_r1 + t_r2; }
};

/// Solve the composite for matrix element x1 > 0 and half-detuning delta:
/// cos(theta) = x1 / hypot(x1, delta), cos(2 theta) = x2 / hypot(x2, delta).
inline PulseParameters solve_pulse_parameters(double x1, double delta) {
  if (!(x1 > 0.0) || !std::isfinite(x1)) throw InvalidArgument("solve_pulse_parameters: x1 must be > 0");
  if (!std::isfinite(delta)) throw InvalidArgument("solve_pulse_parameters: non-finite detuning");
  PulseParameters p;
  p.x1 = x1;
  p.delta = delta;
  p.theta = std::atan2(delta, x1);
  // x2 = delta / tan(2 theta), written so that x1 == |delta| gives exactly 0.
  // Without detuning every pulse is already a pi rotation; keep x2 = x1.
  p.x2 = delta == 0.0 ? x1 : (x1 * x1 - delta * delta) / (2.0 * x1);
  p.t_r1 = std::numbers::pi / (2.0 * std::hypot(p.x1, delta));
  p.t_r2 = std::numbers::pi / (2.0 * std::hypot(p.x2, delta));
  return p;
}

/// Parameters for the first CPHASE transfer, whose block is detuned by 4*J2.
inline PulseParameters solve_pulse_parameters(const ChainSpec& spec) {
  return solve_pulse_parameters(spec.x1_max, 2.0 * spec.j2);
}

/// R(x) = exp(+i K pi / (2 Omega)) with K = [[delta, x], [x, -delta]] the
/// traceless part of the detuned block and Omega = hypot(x, delta). Equals
/// i (sin(t) sigma^z + cos(t) sigma^x) with tan(t) = delta / x.
inline Matrix2c rotation_matrix(double x, double delta) {
  const double omega = std::hypot(x, delta);
  if (omega == 0.0) throw InvalidArgument("rotation_matrix: zero generator");
  const cplx i{0.0, 1.0};
  Matrix2c r;
  r << i * (delta / omega), i * (x / omega), i * (x / omega), -i * (delta / omega);
  return r;
}

/// exp(-i H t) of the physical block H = [[0, x], [x, 2 delta]] (the second
/// level raised by 2*delta), evaluated in closed form.
inline Matrix2c block_evolution(double x, double delta, double t) {
  const double omega = std::hypot(x, delta);
  const cplx i{0.0, 1.0};
  const cplx global = std::exp(-i * delta * t);
  Matrix2c k;
  k << -delta, x, x, delta;
  if (omega == 0.0) return global * Matrix2c::Identity();
  return global * (std::cos(omega * t) * Matrix2c::Identity() - i * std::sin(omega * t) / omega * k);
}

inline Matrix2c composite_rotation(const PulseParameters& p) {
  return rotation_matrix(p.x1, p.delta) * rotation_matrix(p.x2, p.delta) * rotation_matrix(p.x1, p.delta);
}

}  // namespace blockade

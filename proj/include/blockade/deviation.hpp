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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "blockade/chain.hpp"
#include "blockade/error.hpp"
#include "blockade/layout.hpp"
#include "blockade/linalg.hpp"

namespace blockade {

/// Gate deviation ||U - V|| caused by omitting H_L, evaluated on the
/// single-spin layout (n logical qubits on a 2n+1 spin chain, blockades
/// frozen alternately). U evolves under H_Ideal, V under H_Ideal + H_L.

enum class Scenario { Idle, SigmaZ, SigmaX, InterQubit };

inline std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Idle: return "idle";
    case Scenario::SigmaZ: return "sigma_z";
    case Scenario::SigmaX: return "sigma_x";
    case Scenario::InterQubit: return "inter_qubit";
  }
  return "?";
}

inline Scenario scenario_from_string(const std::string& s) {
  if (s == "idle") return Scenario::Idle;
  if (s == "sigma_z") return Scenario::SigmaZ;
  if (s == "sigma_x") return Scenario::SigmaX;
  if (s == "inter_qubit") return Scenario::InterQubit;
  throw InvalidArgument("unknown scenario '" + s + "'");
}

struct ScenarioResult {
  Scenario scenario = Scenario::Idle;
  int n_logical = 0;
  double j2 = 0.0;
  double t = 0.0;
  double exact_raw = 0.0;
  double exact_phase_opt = 0.0;
  double lower_bound = 0.0;

  bool bound_holds(double tol = 1e-9) const { return exact_phase_opt >= lower_bound - tol; }
};

struct ScenarioOptions {
  /// 1-based target qubit (SigmaZ/SigmaX) or first qubit of the gate pair
  /// (InterQubit). Defaults to the chain middle.
  std::optional<int> target;
  double bz = 0.3;   ///< field on the target (SigmaZ)
  double bx = 0.3;   ///< field on the target (SigmaX)
  double jxy = 0.3;  ///< exchange on the two gate bonds (InterQubit, full chain only)
  double j1 = 1.0;   ///< nearest-neighbour Ising strength (full chain only)
};

inline constexpr int kMaxEnumeratedQubits = 20;

/// Number of surviving J2 bonds that set each scenario's lower bound.
inline int bound_order(Scenario s, int n) {
  switch (s) {
    case Scenario::Idle:
    case Scenario::SigmaZ: return n - 1;
    case Scenario::SigmaX: return n - 3;
    case Scenario::InterQubit: return n - 2;
  }
  return 0;
}

inline double lower_bound(Scenario s, int n, double j2, double t) {
  return 2.0 * std::abs(std::sin(j2 * t * bound_order(s, n) / 2.0));
}

inline int minimum_qubits(Scenario s) {
  switch (s) {
    case Scenario::Idle:
    case Scenario::SigmaZ: return 2;
    case Scenario::SigmaX: return 4;
    case Scenario::InterQubit: return 3;
  }
  return 2;
}

namespace detail {

enum class QubitState { Free, Zero, One, Plus };

/// Which qubits are frozen (and how) in the subspace a scenario is judged on,
/// plus the controls that implement the ideal gate on the full chain.
struct ScenarioSetup {
  Scenario scenario;
  int n;
  LogicalLayout layout;
  std::vector<QubitState> qubits;  // index q-1
  std::vector<int> free_qubits;    // 1-based, ascending
  int plus_qubit = 0;              // SigmaX target, 0 if none

  ControlSegment ideal_controls(const ScenarioOptions& o, double duration) const {
    auto seg = ControlSegment::idle(layout.n_spins, duration);
    const int t = target();
    switch (scenario) {
      case Scenario::Idle: break;
      case Scenario::SigmaZ: seg.bz[static_cast<std::size_t>(2 * t - 1)] = o.bz; break;
      case Scenario::SigmaX: seg.bx[static_cast<std::size_t>(2 * t - 1)] = o.bx; break;
      case Scenario::InterQubit:
        seg.jxy[static_cast<std::size_t>(2 * t - 1)] = o.jxy;  // bond (2t, 2t+1)
        seg.jxy[static_cast<std::size_t>(2 * t)] = o.jxy;      // bond (2t+1, 2t+2)
        break;
    }
    return seg;
  }

  int target_ = 0;
  int target() const { return target_; }

  /// Full-chain bits for a free-qubit pattern; `plus_branch` picks the bit of
  /// the SigmaX target.
  std::vector<int> chain_bits(std::uint64_t pattern, int plus_branch = 0) const {
    std::vector<int> logical(static_cast<std::size_t>(n), 0);
    const int nf = static_cast<int>(free_qubits.size());
    for (int f = 0; f < nf; ++f)
      logical[static_cast<std::size_t>(free_qubits[static_cast<std::size_t>(f)] - 1)] =
          static_cast<int>((pattern >> (nf - 1 - f)) & 1U);
    for (int q = 1; q <= n; ++q) {
      switch (qubits[static_cast<std::size_t>(q - 1)]) {
        case QubitState::Zero: logical[static_cast<std::size_t>(q - 1)] = 0; break;
        case QubitState::One: logical[static_cast<std::size_t>(q - 1)] = 1; break;
        case QubitState::Plus: logical[static_cast<std::size_t>(q - 1)] = plus_branch; break;
        case QubitState::Free: break;
      }
    }
    return layout.physical_bits(logical);
  }

  std::uint64_t n_patterns() const { return std::uint64_t{1} << free_qubits.size(); }
};

inline ScenarioSetup make_setup(Scenario s, int n, const ScenarioOptions& o) {
  if (n < minimum_qubits(s))
    throw InvalidArgument(to_string(s) + " deviation needs at least " + std::to_string(minimum_qubits(s)) +
                          " logical qubits");
  ScenarioSetup su{s, n, LogicalLayout::single_spin(n), std::vector<QubitState>(static_cast<std::size_t>(n)), {}, 0};
  auto& q = su.qubits;
  auto at = [&](int k) -> QubitState& { return q[static_cast<std::size_t>(k - 1)]; };
  int t = 0;
  switch (s) {
    case Scenario::Idle: break;
    case Scenario::SigmaZ:
      t = o.target.value_or((n + 1) / 2);
      if (t < 1 || t > n) throw InvalidArgument("sigma_z deviation: target out of range");
      at(t) = QubitState::Zero;
      break;
    case Scenario::SigmaX:
      t = o.target.value_or((n + 1) / 2);
      if (t < 2 || t > n - 1) throw InvalidArgument("sigma_x deviation: target needs neighbours on both sides");
      at(t - 1) = QubitState::Zero;
      at(t) = QubitState::Plus;
      at(t + 1) = QubitState::One;
      su.plus_qubit = t;
      break;
    case Scenario::InterQubit: {
      t = o.target.value_or(std::max(1, n / 2));
      if (t < 1 || t > n - 1) throw InvalidArgument("inter_qubit deviation: pair out of range");
      // The exchange pulses annihilate the gate pair only when both qubits
      // match the blockade between them.
      const int c = *su.layout.frozen_bit(2 * t + 1);
      at(t) = at(t + 1) = c ? QubitState::One : QubitState::Zero;
      break;
    }
  }
  su.target_ = t;
  for (int k = 1; k <= n; ++k)
    if (at(k) == QubitState::Free) su.free_qubits.push_back(k);
  if (static_cast<int>(su.free_qubits.size()) > kMaxEnumeratedQubits)
    throw InvalidArgument("deviation: pattern enumeration exceeds cap");
  return su;
}

/// H_L energy for every free pattern, evaluated on the full chain.
inline std::vector<double> long_range_energies(const ScenarioSetup& su, double j2) {
  ChainSpec chain{su.layout.n_spins, 1.0, j2, 0.0};
  const OperatorSum hl = build_h_long(chain);
  std::vector<double> e(su.n_patterns());
  for (std::uint64_t p = 0; p < su.n_patterns(); ++p) {
    const auto bits = su.chain_bits(p, 0);
    e[p] = hl.diagonal_energy(basis_index(bits));
    if (su.plus_qubit) {
      const double e1 = hl.diagonal_energy(basis_index(su.chain_bits(p, 1)));
      if (std::abs(e1 - e[p]) > 1e-12)
        throw NumericalError("sigma_x deviation: subspace is not invariant under H_L");
    }
  }
  return e;
}

}  // namespace detail

/// Deviation in the scenario's reduced qubit space (diagonal fast path).
inline ScenarioResult scenario_deviation(Scenario s, int n, double j2, double t, const ScenarioOptions& o = {}) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("deviation: t must be finite and >= 0");
  if (!std::isfinite(j2)) throw InvalidArgument("deviation: j2 must be finite");
  const auto su = detail::make_setup(s, n, o);
  const auto energies = detail::long_range_energies(su, j2);
  // U and V share the ideal part, which commutes with H_L on this subspace,
  // so only exp(-i t E_L) survives in U^dag V.
  std::vector<double> zero(energies.size(), 0.0), v_phase(energies.size());
  double raw = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    v_phase[k] = -t * energies[k];
    raw = std::max(raw, std::abs(1.0 - std::polar(1.0, v_phase[k])));
  }
  const auto opt = phase_optimized_distance_diagonal(zero, v_phase);
  return {s, n, j2, t, raw, std::min(opt.distance, raw), lower_bound(s, n, j2, t)};
}

inline ScenarioResult idle_deviation(int n, double j2, double t) {
  return scenario_deviation(Scenario::Idle, n, j2, t);
}

inline ScenarioResult sigma_z_deviation(int n, double j2, double t, double bz, std::optional<int> target = {}) {
  ScenarioOptions o;
  o.bz = bz;
  o.target = target;
  return scenario_deviation(Scenario::SigmaZ, n, j2, t, o);
}

inline ScenarioResult sigma_x_deviation(int n, double j2, double t, double bx, std::optional<int> target = {}) {
  ScenarioOptions o;
  o.bx = bx;
  o.target = target;
  return scenario_deviation(Scenario::SigmaX, n, j2, t, o);
}

inline ScenarioResult interqubit_deviation(int n, double j2, double t, std::optional<int> pair = {}) {
  ScenarioOptions o;
  o.target = pair;
  return scenario_deviation(Scenario::InterQubit, n, j2, t, o);
}

/// Finite-difference slope of the phase-optimized deviation near t = 0,
/// from the samples at t = h and t = 2h.
inline double deviation_slope(Scenario s, int n, double j2, double h = 1e-4, const ScenarioOptions& o = {}) {
  const double d1 = scenario_deviation(s, n, j2, h, o).exact_phase_opt;
  const double d2 = scenario_deviation(s, n, j2, 2.0 * h, o).exact_phase_opt;
  return (d2 - d1) / h;
}

inline double deviation_speed(int n, double j2) {
  if (n < 2) throw InvalidArgument("deviation_speed: n must be >= 2");
  return deviation_slope(Scenario::Idle, n, j2);
}

/// Orthonormal columns spanning the scenario's subspace inside the full
/// 2^(2n+1) chain register, in the same pattern order as the reduced route.
inline CMatrix scenario_isometry(Scenario s, int n, const ScenarioOptions& o = {}) {
  const auto su = detail::make_setup(s, n, o);
  const Eigen::Index dim = Eigen::Index{1} << su.layout.n_spins;
  CMatrix b = CMatrix::Zero(dim, static_cast<Eigen::Index>(su.n_patterns()));
  for (std::uint64_t p = 0; p < su.n_patterns(); ++p) {
    const auto col = static_cast<Eigen::Index>(p);
    if (su.plus_qubit) {
      b(static_cast<Eigen::Index>(basis_index(su.chain_bits(p, 0))), col) = std::sqrt(0.5);
      b(static_cast<Eigen::Index>(basis_index(su.chain_bits(p, 1))), col) = std::sqrt(0.5);
    } else {
      b(static_cast<Eigen::Index>(basis_index(su.chain_bits(p, 0))), col) = 1.0;
    }
  }
  return b;
}

/// Same deviations computed the long way: dense propagators of the whole
/// 2n+1 spin chain under H_Ideal and H_Ideal + H_L, restricted to the
/// scenario subspace. One eigendecomposition per Hamiltonian serves all t.
inline std::vector<ScenarioResult> full_chain_deviations(Scenario s, int n, double j2, const std::vector<double>& ts,
                                                         const ScenarioOptions& o = {}) {
  const auto su = detail::make_setup(s, n, o);
  const ChainSpec chain{su.layout.n_spins, o.j1, j2, 0.0};
  const auto seg = su.ideal_controls(o, 1.0);
  const HermitianEvolution ideal(realize(build_h_ideal(chain, seg)));
  const HermitianEvolution real(realize(build_h_m(chain, seg)));
  const CMatrix iso = scenario_isometry(s, n, o);
  std::vector<ScenarioResult> out;
  for (double t : ts) {
    const CMatrix u = restrict_to(ideal.propagator(t).matrix, iso);
    const CMatrix v = restrict_to(real.propagator(t).matrix, iso);
    if (unitarity_defect(u) >= kUnitarityTol || unitarity_defect(v) >= kUnitarityTol)
      throw NumericalError("full_chain_deviations: scenario subspace is not invariant");
    const double raw = spectral_norm(u - v);
    const auto opt = phase_optimized_distance(u, v);
    out.push_back({s, n, j2, t, raw, std::min(opt.distance, raw), lower_bound(s, n, j2, t)});
  }
  return out;
}

/// t-grid used for bound sweeps: `points` samples evenly spaced on
/// [0, pi / (2 j2 n)] (or [0, 1] when j2 == 0).
inline std::vector<double> default_t_grid(int n, double j2, int points = 20) {
  const double t_max = j2 == 0.0 ? 1.0 : std::numbers::pi / (2.0 * std::abs(j2) * n);
  std::vector<double> ts;
  for (int i = 0; i < points; ++i) ts.push_back(points == 1 ? 0.0 : t_max * i / (points - 1));
  return ts;
}

}  // namespace blockade

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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "blockade/chain.hpp"
#include "blockade/error.hpp"
#include "blockade/layout.hpp"
#include "blockade/linalg.hpp"
#include "blockade/pulses.hpp"

namespace blockade {

using Matrix4c = Eigen::Matrix4cd;

// ---------------------------------------------------------------------------
// Static cancellation check
// ---------------------------------------------------------------------------

struct BlockadeResidual {
  /// Half the spread of the Ising energy over all logical code states; zero
  /// means the always-on couplings act as a pure energy offset on the code.
  double residual = 0.0;
  /// Largest logical sigma^z field produced by frozen blockades alone.
  double frozen_field = 0.0;
};

namespace detail {

/// sum_i s_i s_{i+k} for k = 1..max_order, as exact integers.
inline std::vector<long> ising_order_counts(const std::vector<int>& bits, int max_order) {
  std::vector<long> c(static_cast<std::size_t>(max_order), 0);
  const int n = static_cast<int>(bits.size());
  for (int k = 1; k <= max_order; ++k)
    for (int i = 0; i + k < n; ++i)
      c[static_cast<std::size_t>(k - 1)] +=
          (bits[static_cast<std::size_t>(i)] == bits[static_cast<std::size_t>(i + k)]) ? 1 : -1;
  return c;
}

/// Integer sum of frozen sigma^z values at distance k from `site`, per order.
inline std::vector<long> frozen_neighbour_sums(const LogicalLayout& l, int site, int max_order) {
  std::vector<long> h(static_cast<std::size_t>(max_order), 0);
  for (int k = 1; k <= max_order; ++k)
    for (int nb : {site - k, site + k})
      if (nb >= 1 && nb <= l.n_spins)
        if (auto f = l.frozen_bit(nb)) h[static_cast<std::size_t>(k - 1)] += *f ? 1 : -1;
  return h;
}

inline double weighted(const std::vector<double>& j, const std::vector<long>& c) {
  double s = 0.0;
  for (std::size_t k = 0; k < j.size(); ++k)
    if (c[k] != 0) s += j[k] * static_cast<double>(c[k]);
  return s;
}

}  // namespace detail

/// `couplings[k-1]` is the Ising strength at distance k (J1, J2, J3, ...).
inline BlockadeResidual blockade_residual(const LogicalLayout& layout, const std::vector<double>& couplings) {
  layout.validate();
  if (couplings.empty()) throw InvalidArgument("blockade check: need at least one coupling order");
  for (double j : couplings)
    if (!std::isfinite(j)) throw InvalidArgument("blockade check: non-finite coupling");
  if (layout.n_logical > 20) throw InvalidArgument("blockade check: too many logical qubits to enumerate");
  const int orders = static_cast<int>(couplings.size());
  BlockadeResidual out;

  const std::uint64_t states = std::uint64_t{1} << layout.n_logical;
  std::vector<long> ref;
  double lo = 0.0, hi = 0.0;
  for (std::uint64_t s = 0; s < states; ++s) {
    std::vector<int> logical(static_cast<std::size_t>(layout.n_logical));
    for (int q = 0; q < layout.n_logical; ++q)
      logical[static_cast<std::size_t>(q)] = static_cast<int>((s >> (layout.n_logical - 1 - q)) & 1U);
    auto c = detail::ising_order_counts(layout.physical_bits(logical), orders);
    if (s == 0) ref = c;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= ref[k];
    const double e = detail::weighted(couplings, c);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  out.residual = 0.5 * (hi - lo);

  for (const auto& q : layout.qubit_sites) {
    auto ha = detail::frozen_neighbour_sums(layout, q[0], orders);
    if (layout.encoding == Encoding::DualRail) {
      // On span{|01>,|10>} only the difference of the two fields survives.
      const auto hb = detail::frozen_neighbour_sums(layout, q[1], orders);
      for (std::size_t k = 0; k < ha.size(); ++k) ha[k] -= hb[k];
    }
    out.frozen_field = std::max(out.frozen_field, std::abs(detail::weighted(couplings, ha)));
  }
  return out;
}

inline double verify_blockade_cancellation(const LogicalLayout& layout, const std::vector<double>& couplings) {
  return blockade_residual(layout, couplings).residual;
}

// ---------------------------------------------------------------------------
// Reduced Hamiltonians of the two-qubit window
// ---------------------------------------------------------------------------

/// Blocks of H_M on the 10-spin two-qubit chain, labelled by spins 3..8:
///   h2 on {|100010>, |100100>}, h3 on {|010001>, |001001>},
///   h4 on {|010010>, |010100>, |001010>, |001100>}.
/// All three share the energy zero `background_energy` (the Ising energy of
/// the four degenerate logical states, frozen blockades included).
struct ReducedHamiltonians {
  Matrix2c h2;
  Matrix2c h3;
  Matrix4c h4;
  double background_energy = 0.0;
};

inline ReducedHamiltonians reduced_hamiltonians(const ChainSpec& spec, double j45, double j67) {
  const double a = 2.0 * j45, b = 2.0 * j67;
  const double d2 = 4.0 * spec.j2, d1 = 4.0 * spec.j1;
  ReducedHamiltonians r;
  r.h2 << 0.0, b, b, 0.0;
  r.h3 << 0.0, a, a, 0.0;
  r.h4 << 0.0, b, a, 0.0,  //
      b, d2, 0.0, a,       //
      a, 0.0, d2, b,       //
      0.0, a, b, d1;
  r.background_energy = spec.j1;
  return r;
}

// ---------------------------------------------------------------------------
// CPHASE compilation
// ---------------------------------------------------------------------------

struct CphaseOptions {
  /// Solve pulses and the phase calibration as if J2 were zero.
  bool naive = false;
  /// Extend the free-evolution step so the dynamical phase picked up during
  /// the transfer pulses is cancelled and the gate phase is exactly -E_C tau.
  bool calibrate_phase = true;
  std::optional<LogicalLayout> layout;  ///< default: two dual-rail qubits, m = 2
  int first_qubit = 0;                  ///< gate acts on (first_qubit, first_qubit + 1)
};

/// A compiled CPHASE with the bookkeeping needed to audit it.
struct CphaseProgram {
  ControlSchedule schedule;
  PulseParameters step1;
  PulseParameters step2;
  double transfer_energy_1 = 0.0;  ///< E_B - E_A (first transfer block)
  double transfer_energy_2 = 0.0;  ///< E_C - E_A (state holding the phase)
  double phase_offset = 0.0;       ///< dynamical phase of the four transfer steps
  double calibration_dwell = 0.0;  ///< extra free evolution added to step 3
  double nominal_phase = 0.0;      ///< -(E_C - E_A) tau, wrapped to (-pi, pi]
};

inline double wrap_pi(double a) {
  double w = wrap_angle(a);
  if (w > std::numbers::pi) w -= 2.0 * std::numbers::pi;
  return w;
}

namespace detail {

struct CphaseGeometry {
  LogicalLayout layout;
  int q1, q2;
  int bond1;  // 1-based left site of the first transfer bond
  int bond2;
  double e_b = 0.0, e_c = 0.0;
};

inline LogicalLayout cphase_layout(const ChainSpec& spec, const CphaseOptions& o) {
  LogicalLayout l = o.layout.value_or(LogicalLayout::dual_rail(2, 2));
  if (l.n_spins != spec.n_spins) throw InvalidArgument("CPHASE: chain length does not match the layout");
  if (l.encoding != Encoding::DualRail || l.blockade_width != 2)
    throw InvalidArgument("CPHASE: compilation is defined for dual-rail qubits with two-spin blockades");
  return l;
}

inline double ising_energy(const ChainSpec& spec, const std::vector<int>& bits) {
  const OperatorSum h = build_h_m(spec, ControlSegment::idle(spec.n_spins, 1.0));
  return h.diagonal_energy(basis_index(bits));
}

inline CphaseGeometry cphase_geometry(const ChainSpec& model, const LogicalLayout& l, int first) {
  if (first < 0 || first + 1 >= l.n_logical) throw InvalidArgument("CPHASE: qubit pair out of range");
  CphaseGeometry g{l, first, first + 1, 0, 0};
  const auto& s1 = l.qubit_sites[static_cast<std::size_t>(g.q1)];
  const auto& s2 = l.qubit_sites[static_cast<std::size_t>(g.q2)];
  g.bond1 = s1[1];
  g.bond2 = s2[0] - 1;

  auto logical = [&](int v1, int v2) {
    std::vector<int> v(static_cast<std::size_t>(l.n_logical), 0);
    v[static_cast<std::size_t>(g.q1)] = v1;
    v[static_cast<std::size_t>(g.q2)] = v2;
    return l.physical_bits(v);
  };
  auto a = logical(0, 1);
  const double e_a = ising_energy(model, a);
  for (auto [v1, v2] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{1, 1}})
    if (std::abs(ising_energy(model, logical(v1, v2)) - e_a) > 1e-12 * std::max(1.0, std::abs(e_a)))
      throw NumericalError("CPHASE: logical states are not degenerate under the static couplings");
  auto b = a;
  std::swap(b[static_cast<std::size_t>(g.bond1 - 1)], b[static_cast<std::size_t>(g.bond1)]);
  auto c = b;
  std::swap(c[static_cast<std::size_t>(g.bond2 - 1)], c[static_cast<std::size_t>(g.bond2)]);
  g.e_b = ising_energy(model, b) - e_a;
  g.e_c = ising_energy(model, c) - e_a;
  return g;
}

inline void push_composite(ControlSchedule& s, int n_spins, int bond, const PulseParameters& p, double sign) {
  for (auto [x, t] : {std::pair{p.x1, p.t_r1}, std::pair{p.x2, p.t_r2}, std::pair{p.x1, p.t_r1}}) {
    auto seg = ControlSegment::idle(n_spins, t);
    seg.jxy[static_cast<std::size_t>(bond - 1)] = sign * x / 2.0;
    s.segments.push_back(std::move(seg));
  }
}

}  // namespace detail

/// Four-step CPHASE: transfer |01>_L through the blockade pair into the state
/// |..0011..> carrying the extra Ising energy, let it dwell, and undo the
/// transfer with sign-reversed pulses. All local fields stay off.
inline CphaseProgram compile_cphase_program(const ChainSpec& spec, double tau, const CphaseOptions& o = {}) {
  spec.validate();
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("compile_cphase: tau must be finite and >= 0");
  if (!(spec.x1_max > 0.0)) throw InvalidArgument("compile_cphase: x1_max must be > 0");
  const LogicalLayout layout = detail::cphase_layout(spec, o);
  ChainSpec model = spec;
  if (o.naive) model.j2 = 0.0;
  const auto g = detail::cphase_geometry(model, layout, o.first_qubit);
  const auto truth = detail::cphase_geometry(spec, layout, o.first_qubit);

  CphaseProgram prog;
  prog.transfer_energy_1 = g.e_b;
  prog.transfer_energy_2 = g.e_c;
  prog.step1 = solve_pulse_parameters(spec.x1_max, g.e_b / 2.0);
  prog.step2 = solve_pulse_parameters(spec.x1_max, (g.e_c - g.e_b) / 2.0);
  // Each transfer block evolves with the mean energy of its two levels; the
  // forward and reversed passes each last the composite's total duration.
  prog.phase_offset = wrap_pi(-g.e_b * prog.step1.total_duration() -
                              (g.e_b + g.e_c) * prog.step2.total_duration());
  if (o.calibrate_phase) {
    if (g.e_c == 0.0) throw InvalidArgument("compile_cphase: no static energy to calibrate against");
    const double period = 2.0 * std::numbers::pi / std::abs(g.e_c);
    double dwell = std::fmod(prog.phase_offset / g.e_c, period);
    if (dwell < 0.0) dwell += period;
    if (dwell >= period) dwell -= period;
    prog.calibration_dwell = dwell;
  }
  prog.nominal_phase = wrap_pi(-truth.e_c * tau);

  auto& s = prog.schedule;
  const int n = spec.n_spins;
  detail::push_composite(s, n, g.bond1, prog.step1, +1.0);
  detail::push_composite(s, n, g.bond2, prog.step2, +1.0);
  const double dwell = tau + prog.calibration_dwell;
  if (dwell > 0.0) s.segments.push_back(ControlSegment::idle(n, dwell));
  detail::push_composite(s, n, g.bond2, prog.step2, -1.0);
  detail::push_composite(s, n, g.bond1, prog.step1, -1.0);
  return prog;
}

inline ControlSchedule compile_cphase(const ChainSpec& spec, double tau, const CphaseOptions& o = {}) {
  return compile_cphase_program(spec, tau, o).schedule;
}

/// CPHASE with a requested phase: picks the shortest dwell tau >= 0 with
/// -(E_C - E_A) tau == phase (mod 2 pi).
inline CphaseProgram compile_cphase_for_phase(const ChainSpec& spec, double phase, const CphaseOptions& o = {}) {
  const LogicalLayout layout = detail::cphase_layout(spec, o);
  const auto truth = detail::cphase_geometry(spec, layout, o.first_qubit);
  if (truth.e_c == 0.0) throw InvalidArgument("compile_cphase_for_phase: no static energy to accumulate phase");
  const double period = 2.0 * std::numbers::pi / std::abs(truth.e_c);
  double tau = std::fmod(-phase / truth.e_c, period);
  if (tau < 0.0) tau += period;
  if (tau >= period) tau -= period;
  return compile_cphase_program(spec, tau, o);
}

// ---------------------------------------------------------------------------
// Gate simulation
// ---------------------------------------------------------------------------

struct GateReport {
  Matrix4c logical_matrix = Matrix4c::Identity();  ///< columns: inputs |00>,|01>,|10>,|11>
  double leakage = 0.0;
  double fidelity = 1.0;
  double phase_phi = 0.0;  ///< arg(M_11 / M_00) in (-pi, pi]
};

inline Matrix4c cphase_matrix(double phi) {
  Matrix4c m = Matrix4c::Identity();
  m(1, 1) = std::polar(1.0, phi);
  return m;
}

/// |Tr(T^dag M)|^2 / 16, insensitive to global phase.
inline double gate_fidelity(const Matrix4c& target, const Matrix4c& m) {
  return std::clamp(std::norm((target.adjoint() * m).trace()) / 16.0, 0.0, 1.0);
}

/// Evolve the four logical basis states of qubits (q, q+1) under the full
/// chain H_M, spectators held in |0>_L and blockades frozen, and project back
/// onto the logical basis. Without an explicit `ideal`, fidelity is measured
/// against CPHASE(phase_phi).
inline GateReport simulate_gate(const ChainSpec& spec, const LogicalLayout& layout, const ControlSchedule& sched,
                                int first_qubit = 0, std::optional<Matrix4c> ideal = std::nullopt) {
  spec.validate();
  layout.validate();
  if (layout.n_spins != spec.n_spins) throw InvalidArgument("simulate_gate: layout does not match the chain");
  if (first_qubit < 0 || first_qubit + 1 >= layout.n_logical) throw InvalidArgument("simulate_gate: bad qubit pair");
  sched.validate(spec.n_spins);

  std::vector<std::uint64_t> inputs;
  for (int v1 : {0, 1})
    for (int v2 : {0, 1}) {
      std::vector<int> logical(static_cast<std::size_t>(layout.n_logical), 0);
      logical[static_cast<std::size_t>(first_qubit)] = v1;
      logical[static_cast<std::size_t>(first_qubit + 1)] = v2;
      inputs.push_back(basis_index(layout.physical_bits(logical)));
    }

  GateReport r;
  Matrix4c m = Matrix4c::Zero();
  std::vector<double> kept(4, 0.0);
  const int weight = std::popcount(inputs[0]);
  const bool same_weight =
      std::all_of(inputs.begin(), inputs.end(), [&](std::uint64_t k) { return std::popcount(k) == weight; });
  if (conserves_magnetization(sched) && same_weight) {
    const auto sp = evolve_sector(spec, sched, weight, true, BzPolicy::Forbid);
    auto pos = [&](std::uint64_t k) {
      return static_cast<Eigen::Index>(std::lower_bound(sp.basis.begin(), sp.basis.end(), k) - sp.basis.begin());
    };
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) m(i, j) = sp.block(pos(inputs[static_cast<std::size_t>(i)]),
                                                   pos(inputs[static_cast<std::size_t>(j)]));
  } else {
    EvolveOptions eo;
    eo.bz_policy = BzPolicy::Forbid;
    eo.record_trace = false;
    const auto p = evolve(spec, sched, true, eo);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i)
        m(i, j) = p.matrix(static_cast<Eigen::Index>(inputs[static_cast<std::size_t>(i)]),
                           static_cast<Eigen::Index>(inputs[static_cast<std::size_t>(j)]));
  }
  for (int j = 0; j < 4; ++j) r.leakage = std::max(r.leakage, std::max(0.0, 1.0 - m.col(j).squaredNorm()));
  if (std::abs(m(0, 0)) > 0.0) m *= std::conj(m(0, 0)) / std::abs(m(0, 0));
  r.logical_matrix = m;
  r.phase_phi = std::abs(m(0, 0)) > 0.0 ? std::arg(m(1, 1) / m(0, 0)) : 0.0;
  r.fidelity = gate_fidelity(ideal.value_or(cphase_matrix(r.phase_phi)), m);
  return r;
}

// ---------------------------------------------------------------------------
// Single-qubit gates
// ---------------------------------------------------------------------------

/// exp(-i angle sigma^x / 2) on dual-rail qubit `qubit` (0-based): one pulse on
/// the intra-pair bond at strength x1_max / 2. Zero angle gives the empty
/// (identity) schedule.
inline ControlSchedule logical_sigma_x(const ChainSpec& spec, const LogicalLayout& layout, int qubit, double angle) {
  spec.validate();
  if (!std::isfinite(angle)) throw InvalidArgument("logical_sigma_x: non-finite angle");
  if (qubit < 0 || qubit >= layout.n_logical) throw InvalidArgument("logical_sigma_x: qubit out of range");
  if (layout.encoding != Encoding::DualRail) throw InvalidArgument("logical_sigma_x: needs dual-rail qubits");
  if (!(spec.x1_max > 0.0)) throw InvalidArgument("logical_sigma_x: x1_max must be > 0");
  ControlSchedule s;
  if (angle == 0.0) return s;
  // On span{|01>,|10>} the bond term J(XX + YY) is 2 J sigma^x_L.
  auto seg = ControlSegment::idle(spec.n_spins, std::abs(angle) / (2.0 * spec.x1_max));
  seg.jxy[static_cast<std::size_t>(layout.qubit_sites[static_cast<std::size_t>(qubit)][0] - 1)] =
      std::copysign(spec.x1_max / 2.0, angle);
  s.segments.push_back(std::move(seg));
  return s;
}

/// exp(i phi sigma^z) on `qubit` of the pair (0, 1), up to global phase, from
/// (X_aux * CPHASE(+-2 phi))^2 with the other qubit as auxiliary.
inline ControlSchedule logical_sigma_z(const ChainSpec& spec, const LogicalLayout& layout, int qubit, double phi,
                                       const CphaseOptions& o = {}) {
  if (layout.n_logical < 2) throw InvalidArgument("logical_sigma_z: needs two logical qubits");
  if (qubit != o.first_qubit && qubit != o.first_qubit + 1)
    throw InvalidArgument("logical_sigma_z: qubit is not part of the CPHASE pair");
  if (!std::isfinite(phi)) throw InvalidArgument("logical_sigma_z: non-finite phase");
  const int aux = qubit == o.first_qubit ? o.first_qubit + 1 : o.first_qubit;
  // CPHASE marks |0_first 1_second>; conjugating by X on the auxiliary moves
  // the mark so the pair of steps acts only on the target's value.
  const double cphase_angle = qubit == o.first_qubit ? 2.0 * phi : -2.0 * phi;
  CphaseOptions co = o;
  co.layout = layout;
  ControlSchedule step = logical_sigma_x(spec, layout, aux, std::numbers::pi);
  step.append(compile_cphase_for_phase(spec, cphase_angle, co).schedule);
  ControlSchedule s = step;
  s.append(step);
  return s;
}

}  // namespace blockade

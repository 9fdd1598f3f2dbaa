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
#include <string>
#include <vector>

#include "blockade/error.hpp"
#include "blockade/linalg.hpp"
#include "blockade/pauli.hpp"

namespace blockade {

/// Static parameters of a spin-1/2 chain with always-on Ising couplings.
struct ChainSpec {
  int n_spins = 2;
  double j1 = 1.0;      ///< nearest-neighbour Ising strength
  double j2 = 0.0;      ///< next-nearest-neighbour Ising strength
  double x1_max = 0.5;  ///< largest tunable XY matrix element (bond value x1_max / 2)

  void validate() const {
    if (n_spins < 2) throw InvalidArgument("ChainSpec: n_spins must be >= 2");
    if (!std::isfinite(j1) || !std::isfinite(j2) || !std::isfinite(x1_max))
      throw InvalidArgument("ChainSpec: non-finite energy");
    if (x1_max < 0.0) throw InvalidArgument("ChainSpec: x1_max must be >= 0");
  }

  /// Non-fatal observations about the parameter regime.
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (std::abs(j2) >= std::abs(j1) && j2 != 0.0)
      w.push_back("|J2| >= |J1|: outside the weak next-nearest-neighbour regime");
    return w;
  }
};

/// Piecewise-constant controls held for `duration`.
struct ControlSegment {
  double duration = 0.0;
  std::vector<double> bx;   ///< per site, length N
  std::vector<double> bz;   ///< per site, length N
  std::vector<double> jxy;  ///< per bond (i, i+1), length N-1

  static ControlSegment idle(int n_spins, double duration) {
    return {duration, std::vector<double>(static_cast<std::size_t>(n_spins), 0.0),
            std::vector<double>(static_cast<std::size_t>(n_spins), 0.0),
            std::vector<double>(static_cast<std::size_t>(n_spins - 1), 0.0)};
  }

  void validate(int n_spins) const {
    if (!(duration > 0.0) || !std::isfinite(duration))
      throw InvalidArgument("ControlSegment: duration must be finite and > 0");
    if (bx.size() != static_cast<std::size_t>(n_spins) || bz.size() != static_cast<std::size_t>(n_spins) ||
        jxy.size() != static_cast<std::size_t>(n_spins - 1))
      throw InvalidArgument("ControlSegment: control vector lengths do not match the chain");
    for (const auto* v : {&bx, &bz, &jxy})
      for (double x : *v)
        if (!std::isfinite(x)) throw InvalidArgument("ControlSegment: non-finite control");
  }

  bool has_transverse_field() const {
    for (double x : bx)
      if (x != 0.0) return true;
    return false;
  }

  friend bool operator==(const ControlSegment&, const ControlSegment&) = default;
};

/// Ordered segments; segment 0 acts first. An empty schedule is the identity.
struct ControlSchedule {
  std::vector<ControlSegment> segments;

  double total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
  }

  void validate(int n_spins) const {
    for (const auto& s : segments) s.validate(n_spins);
  }

  ControlSchedule& append(const ControlSchedule& other) {
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    return *this;
  }

  friend bool operator==(const ControlSchedule&, const ControlSchedule&) = default;
};

/// H_S + H_I: local fields plus tunable XY and fixed J1 Ising on every bond.
inline OperatorSum build_h_ideal(const ChainSpec& spec, const ControlSegment& seg) {
  spec.validate();
  const int n = spec.n_spins;
  if (seg.bx.size() != static_cast<std::size_t>(n) || seg.bz.size() != static_cast<std::size_t>(n) ||
      seg.jxy.size() != static_cast<std::size_t>(n - 1))
    throw InvalidArgument("build_h_ideal: control vector lengths do not match the chain");
  OperatorSum h(n);
  for (int i = 1; i <= n; ++i) {
    h.add(PauliTerm::single(seg.bx[static_cast<std::size_t>(i - 1)], i, Pauli::X));
    h.add(PauliTerm::single(seg.bz[static_cast<std::size_t>(i - 1)], i, Pauli::Z));
  }
  for (int i = 1; i < n; ++i) {
    const double j = seg.jxy[static_cast<std::size_t>(i - 1)];
    h.add(PauliTerm::pair(j, i, Pauli::X, i + 1, Pauli::X));
    h.add(PauliTerm::pair(j, i, Pauli::Y, i + 1, Pauli::Y));
    h.add(PauliTerm::pair(spec.j1, i, Pauli::Z, i + 1, Pauli::Z));
  }
  return h;
}

/// H_L = J2 * sum_i sigma^z_i sigma^z_{i+2}; zero operator for N < 3.
inline OperatorSum build_h_long(const ChainSpec& spec) {
  spec.validate();
  OperatorSum h(spec.n_spins);
  for (int i = 1; i + 2 <= spec.n_spins; ++i) h.add(PauliTerm::pair(spec.j2, i, Pauli::Z, i + 2, Pauli::Z));
  return h;
}

enum class BzPolicy { Allow, Forbid };

/// H_M = H_S + H_I + H_L. With BzPolicy::Forbid any nonzero bz is rejected
/// (the encoded-gate pathway runs with all longitudinal fields off).
inline OperatorSum build_h_m(const ChainSpec& spec, const ControlSegment& seg,
                             BzPolicy policy = BzPolicy::Allow) {
  if (policy == BzPolicy::Forbid)
    for (double b : seg.bz)
      if (b != 0.0) throw InvalidArgument("build_h_m: nonzero bz on the encoded-gate pathway");
  return build_h_ideal(spec, seg) + build_h_long(spec);
}

struct EvolveOptions {
  BzPolicy bz_policy = BzPolicy::Allow;
  /// Use magnetization-sector blocks when no segment has a transverse field.
  bool use_sectors = true;
  bool record_trace = true;
};

inline OperatorSum segment_hamiltonian(const ChainSpec& spec, const ControlSegment& seg,
                                       bool include_long_range, BzPolicy policy) {
  return include_long_range ? build_h_m(spec, seg, policy) : build_h_ideal(spec, seg);
}

inline bool conserves_magnetization(const ControlSchedule& sched) {
  for (const auto& s : sched.segments)
    if (s.has_transverse_field()) return false;
  return true;
}

/// Propagator restricted to one fixed-excitation sector.
struct SectorPropagator {
  int n_spins = 0;
  int excitations = 0;
  std::vector<std::uint64_t> basis;
  CMatrix block;
};

/// Time-ordered product restricted to the sector with `excitations` sites in
/// |1>. Requires bx == 0 throughout so the sector is invariant.
inline SectorPropagator evolve_sector(const ChainSpec& spec, const ControlSchedule& sched, int excitations,
                                      bool include_long_range, BzPolicy policy = BzPolicy::Allow) {
  spec.validate();
  sched.validate(spec.n_spins);
  if (!conserves_magnetization(sched))
    throw InvalidArgument("evolve_sector: transverse fields break magnetization conservation");
  if (excitations < 0 || excitations > spec.n_spins) throw InvalidArgument("evolve_sector: bad excitation count");
  SectorPropagator out{spec.n_spins, excitations, magnetization_sector(spec.n_spins, excitations), {}};
  const auto d = static_cast<Eigen::Index>(out.basis.size());
  out.block = CMatrix::Identity(d, d);
  for (const auto& seg : sched.segments) {
    const CMatrix h = realize_block(segment_hamiltonian(spec, seg, include_long_range, policy), out.basis);
    out.block = HermitianEvolution(h).propagator_matrix(seg.duration) * out.block;
  }
  if (unitarity_defect(out.block) >= kUnitarityTol) throw NumericalError("evolve_sector: result is not unitary");
  return out;
}

/// U = U_K ... U_2 U_1 with U_k = exp(-i duration_k H_k); the first segment
/// acts first.
inline Propagator evolve(const ChainSpec& spec, const ControlSchedule& sched, bool include_long_range,
                         const EvolveOptions& opts = {}) {
  spec.validate();
  sched.validate(spec.n_spins);
  if (spec.n_spins > kDefaultMaxSpins) throw InvalidArgument("evolve: register exceeds dimension cap");
  const Eigen::Index dim = Eigen::Index{1} << spec.n_spins;
  Propagator p{CMatrix::Identity(dim, dim), {}};
  if (opts.record_trace)
    for (const auto& seg : sched.segments)
      p.generator_trace.push_back({segment_hamiltonian(spec, seg, include_long_range, opts.bz_policy), seg.duration});

  if (opts.use_sectors && conserves_magnetization(sched)) {
    for (int w = 0; w <= spec.n_spins; ++w) {
      const auto s = evolve_sector(spec, sched, w, include_long_range, opts.bz_policy);
      for (std::size_t j = 0; j < s.basis.size(); ++j)
        for (std::size_t i = 0; i < s.basis.size(); ++i)
          p.matrix(static_cast<Eigen::Index>(s.basis[i]), static_cast<Eigen::Index>(s.basis[j])) =
              s.block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  } else {
    for (const auto& seg : sched.segments) {
      const CMatrix h = realize(segment_hamiltonian(spec, seg, include_long_range, opts.bz_policy));
      p.matrix = HermitianEvolution(h).propagator_matrix(seg.duration) * p.matrix;
    }
  }
  p.check_unitary();
  return p;
}

}  // namespace blockade

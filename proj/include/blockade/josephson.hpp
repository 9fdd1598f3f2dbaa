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

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockade/chain.hpp"
#include "blockade/error.hpp"

namespace blockade {

enum class ChargeUnits {
  Normalized,  ///< capacitances in any unit, energies in (2e)^2 / C0
  SI,          ///< capacitances in farads, energies in joules
};

inline constexpr double kElementaryCharge = 1.602176634e-19;

/// Identical Cooper-pair boxes in a row, each with gate and junction
/// capacitance, neighbours joined by c_c.
struct JosephsonArraySpec {
  int n_boxes = 8;
  double c_g = 0.5;
  double c_j = 0.5;
  double c_c = 0.01;
  std::vector<double> gate_charges;  ///< empty: 0.5 on every box
  ChargeUnits units = ChargeUnits::Normalized;
  double xy_max = 0.5;  ///< tunable XY bound carried into the emitted chain

  double c0() const { return c_g + c_j; }
  double epsilon() const { return c_c / c0(); }

  double gate_charge(int i) const {
    return gate_charges.empty() ? 0.5 : gate_charges[static_cast<std::size_t>(i)];
  }

  void validate() const {
    if (n_boxes < 2) throw InvalidArgument("JosephsonArraySpec: need at least two boxes");
    for (double c : {c_g, c_j})
      if (!std::isfinite(c) || !(c > 0.0)) throw InvalidArgument("JosephsonArraySpec: c_g and c_j must be > 0");
    if (!std::isfinite(c_c) || c_c < 0.0) throw InvalidArgument("JosephsonArraySpec: c_c must be >= 0");
    if (!(epsilon() < 1.0)) throw InvalidArgument("JosephsonArraySpec: epsilon must be < 1");
    if (!gate_charges.empty() && gate_charges.size() != static_cast<std::size_t>(n_boxes))
      throw InvalidArgument("JosephsonArraySpec: one gate charge per box");
    for (double g : gate_charges)
      if (!std::isfinite(g)) throw InvalidArgument("JosephsonArraySpec: non-finite gate charge");
    if (!std::isfinite(xy_max) || xy_max < 0.0) throw InvalidArgument("JosephsonArraySpec: xy_max must be >= 0");
  }

  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (epsilon() > 0.1) w.push_back("epsilon > 0.1: outside the weak-coupling regime, decay law not expected");
    return w;
  }
};

/// Tridiagonal C: C0(1 + 2 eps) inside, C0(1 + eps) on the two end boxes,
/// -C0 eps between neighbours.
inline RMatrix build_capacitance_matrix(const JosephsonArraySpec& spec) {
  spec.validate();
  const int n = spec.n_boxes;
  const double c0 = spec.c0(), cc = spec.c_c;
  RMatrix c = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int neighbours = (i > 0) + (i + 1 < n);
    c(i, i) = c0 + neighbours * cc;
    if (i + 1 < n) c(i, i + 1) = c(i + 1, i) = -cc;
  }
  return c;
}

inline constexpr double kInverseTol = 1e-12;

inline RMatrix invert_capacitance(const RMatrix& c) {
  if (c.rows() != c.cols() || c.rows() == 0) throw InvalidArgument("invert_capacitance: need a square matrix");
  if (!c.allFinite()) throw InvalidArgument("invert_capacitance: non-finite entries");
  const double scale = c.cwiseAbs().maxCoeff();
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("invert_capacitance: matrix is not symmetric");
  Eigen::LLT<RMatrix> llt(c);
  if (llt.info() != Eigen::Success) throw NumericalError("invert_capacitance: matrix is not positive definite");
  const RMatrix id = RMatrix::Identity(c.rows(), c.cols());
  RMatrix inv = llt.solve(id);
  inv = 0.5 * (inv + inv.transpose()).eval();
  if (!inv.allFinite() || (c * inv - id).cwiseAbs().maxCoeff() > kInverseTol)
    throw NumericalError("invert_capacitance: ill-conditioned, C * C^-1 deviates from identity");
  return inv;
}

enum class DecayStatus { Pass, Fail, OutOfRegime };

inline std::string to_string(DecayStatus s) {
  switch (s) {
    case DecayStatus::Pass: return "pass";
    case DecayStatus::Fail: return "fail";
    case DecayStatus::OutOfRegime: return "out-of-regime";
  }
  return "?";
}

struct DecayRatio {
  int row = 0;    ///< 0-based interior row i
  int order = 0;  ///< k in |C^-1_{i,i+k+1} / C^-1_{i,i+k}|
  double ratio = 0.0;
};

struct DecayCheck {
  std::vector<DecayRatio> ratios;
  double lower = 0.0, upper = 0.0;  ///< acceptance band
  DecayStatus status = DecayStatus::Pass;
  bool passed() const { return status == DecayStatus::Pass; }
};

/// Ratios along interior rows (the two edge rows are skipped), band
/// [(1 - 5 eps) eps, (1 + 5 eps) eps].
inline DecayCheck decay_check(const RMatrix& c_inv, double eps) {
  const auto n = static_cast<int>(c_inv.rows());
  if (c_inv.cols() != n) throw InvalidArgument("decay_check: need a square matrix");
  if (n < 5) throw InvalidArgument("decay_check: needs at least five boxes for interior rows");
  if (!std::isfinite(eps) || eps < 0.0 || eps >= 1.0) throw InvalidArgument("decay_check: epsilon outside [0, 1)");
  DecayCheck d;
  d.lower = (1.0 - 5.0 * eps) * eps;
  d.upper = (1.0 + 5.0 * eps) * eps;
  bool ok = true;
  for (int i = 1; i <= n - 2; ++i)
    for (int k = 0; i + k + 1 < n; ++k) {
      const double num = std::abs(c_inv(i, i + k + 1)), den = std::abs(c_inv(i, i + k));
      double r = 0.0;
      if (den > 0.0) r = num / den;
      else if (num > 0.0) r = std::numeric_limits<double>::infinity();
      d.ratios.push_back({i, k, r});
      if (!(r >= d.lower && r <= d.upper)) ok = false;
    }
  if (eps > 0.1) d.status = DecayStatus::OutOfRegime;
  else d.status = ok ? DecayStatus::Pass : DecayStatus::Fail;
  return d;
}

struct CouplingReport {
  RMatrix c_matrix;
  RMatrix c_inverse;
  RMatrix coupling_matrix;               ///< sigma^z_i sigma^z_j coefficient, i != j
  std::map<int, double> couplings_by_order;  ///< J_k for the centred pair at distance k
  std::vector<double> linear_fields;     ///< sigma^z_i coefficient
  std::optional<DecayCheck> decay;       ///< absent when N < 5
  ChainSpec effective_chain;
  double residual_bound = 0.0;           ///< max |J_k|, k >= 3
  std::vector<std::string> warnings;
};

/// Energy prefactor so that (2e)^2/2 n C^-1 n lands in report units.
inline double charge_energy_scale(const JosephsonArraySpec& spec) {
  if (spec.units == ChargeUnits::SI) return 4.0 * kElementaryCharge * kElementaryCharge;
  return spec.c0();
}

/// Expand (2e)^2/2 (n - n_g) C^-1 (n - n_g) with n_i = (1 + sigma^z_i)/2.
inline CouplingReport extract_couplings(const JosephsonArraySpec& spec, const RMatrix& c_inv) {
  spec.validate();
  const int n = spec.n_boxes;
  if (c_inv.rows() != n || c_inv.cols() != n) throw InvalidArgument("extract_couplings: inverse has wrong size");
  const double s = charge_energy_scale(spec);
  CouplingReport r;
  r.c_matrix = build_capacitance_matrix(spec);
  r.c_inverse = c_inv;
  r.warnings = spec.warnings();
  r.coupling_matrix = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r.coupling_matrix(i, j) = s * c_inv(i, j) / 4.0;
  r.linear_fields.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double h = 0.0;
    for (int j = 0; j < n; ++j) h += c_inv(i, j) * (0.5 - spec.gate_charge(j));
    r.linear_fields[static_cast<std::size_t>(i)] = s * h / 2.0;
  }
  for (int k = 1; k < n; ++k) {
    const int i = (n - k - 1) / 2;
    r.couplings_by_order[k] = r.coupling_matrix(i, i + k);
    if (k >= 3) r.residual_bound = std::max(r.residual_bound, std::abs(r.couplings_by_order[k]));
  }
  if (n >= 5) {
    r.decay = decay_check(c_inv, spec.epsilon());
    if (r.decay->status == DecayStatus::OutOfRegime)
      r.warnings.push_back("decay check out of regime (epsilon > 0.1)");
  }
  r.effective_chain.n_spins = n;
  r.effective_chain.j1 = r.couplings_by_order.at(1);
  r.effective_chain.j2 = n >= 3 ? r.couplings_by_order.at(2) : 0.0;
  r.effective_chain.x1_max = spec.xy_max;
  return r;
}

inline CouplingReport josephson_map(const JosephsonArraySpec& spec) {
  return extract_couplings(spec, invert_capacitance(build_capacitance_matrix(spec)));
}

}  // namespace blockade

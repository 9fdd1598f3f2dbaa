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
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "blockade/error.hpp"
#include "blockade/pauli.hpp"

namespace blockade {

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-12;

inline double max_abs_entry(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

inline double hermiticity_defect(const CMatrix& h) {
  return max_abs_entry(h - h.adjoint());
}

inline double unitarity_defect(const CMatrix& u) {
  return max_abs_entry(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

/// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(a, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w -= two_pi;
  return w;
}

/// Unit-norm complex amplitude vector over a 2^N register.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(CVector amplitudes, bool normalized = true)
      : amps_(std::move(amplitudes)), normalized_(normalized) {
    if (normalized_ && std::abs(amps_.norm() - 1.0) > 1e-12)
      throw InvalidArgument("StateVector: norm differs from 1 by more than 1e-12");
  }

  static StateVector basis(int n_spins, std::uint64_t index) {
    CVector v = CVector::Zero(Eigen::Index{1} << n_spins);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
  }

  const CVector& amplitudes() const { return amps_; }
  bool normalized() const { return normalized_; }

 private:
  CVector amps_;
  bool normalized_ = true;
};

/// One piece of the history that produced a propagator.
struct GeneratorRecord {
  OperatorSum hamiltonian;
  double duration = 0.0;
};

/// Unitary on a register, optionally with the generator segments that built it.
struct Propagator {
  CMatrix matrix;
  std::vector<GeneratorRecord> generator_trace;

  Eigen::Index dim() const { return matrix.rows(); }

  void check_unitary(double tol = kUnitarityTol) const {
    const double d = unitarity_defect(matrix);
    if (!(d < tol))
      throw NumericalError("Propagator: |U^dag U - I| = " + std::to_string(d) + " exceeds tolerance");
  }
};

/// Eigendecomposition of a Hermitian generator, reusable for many durations.
/// exp(-i * sign * t * H) = V exp(-i sign t Lambda) V^dag.
class HermitianEvolution {
 public:
  explicit HermitianEvolution(const CMatrix& h) {
    if (h.rows() != h.cols()) throw InvalidArgument("HermitianEvolution: matrix is not square");
    if (!all_finite(h)) throw InvalidArgument("HermitianEvolution: non-finite entries");
    const double scale = std::max(1.0, max_abs_entry(h));
    if (hermiticity_defect(h) > kHermiticityTol * scale)
      throw InvalidArgument("HermitianEvolution: matrix is not Hermitian");
    if (h.rows() == 0) return;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalError("HermitianEvolution: eigensolver did not converge");
    vectors_ = solver.eigenvectors();
    values_ = solver.eigenvalues();
  }

  CMatrix propagator_matrix(double t, int sign = +1) const {
    if (sign != 1 && sign != -1) throw InvalidArgument("HermitianEvolution: sign must be +1 or -1");
    CVector phases(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      phases(i) = std::polar(1.0, -static_cast<double>(sign) * t * values_(i));
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
  }

  Propagator propagator(double t, int sign = +1) const {
    Propagator p{propagator_matrix(t, sign), {}};
    p.check_unitary();
    return p;
  }

  const RVector& eigenvalues() const { return values_; }
  const CMatrix& eigenvectors() const { return vectors_; }

 private:
  CMatrix vectors_;
  RVector values_;
};

inline Propagator expm_unitary(const CMatrix& h, double t, int sign = +1) {
  return HermitianEvolution(h).propagator(t, sign);
}

/// Largest singular value, sqrt(lambda_max(A^dag A)).
inline double spectral_norm(const CMatrix& a) {
  if (!all_finite(a)) throw InvalidArgument("spectral_norm: non-finite entries");
  if (a.size() == 0) return 0.0;
  const CMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("spectral_norm: eigensolver did not converge");
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

struct PhaseOptimum {
  double phase = 0.0;     ///< phi* in [0, 2*pi)
  double distance = 0.0;  ///< min over phi of || U - e^{i phi} V ||
};

/// Minimax phase alignment of unit phasors e^{i a_k}: returns phi minimizing
/// max_k |1 - e^{i phi} e^{i a_k}|. The optimum rotates the centre of the
/// smallest arc covering every a_k onto 1.
inline PhaseOptimum align_phasors(std::span<const double> angles) {
  if (angles.empty()) return {};
  std::vector<double> a(angles.begin(), angles.end());
  for (double& x : a) x = wrap_angle(x);
  std::sort(a.begin(), a.end());
  const std::size_t n = a.size();
  // Largest circular gap; the covering arc is its complement.
  double best_gap = -1.0;
  std::size_t gap_end = 0;  // index of the point following the gap
  for (std::size_t i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? a[i + 1] : a[0] + 2.0 * std::numbers::pi;
    const double gap = next - a[i];
    if (gap > best_gap) {
      best_gap = gap;
      gap_end = (i + 1) % n;
    }
  }
  const double width = 2.0 * std::numbers::pi - best_gap;
  const double centre = a[gap_end] + 0.5 * width;
  double phase = wrap_angle(-centre);
  if (std::min(phase, 2.0 * std::numbers::pi - phase) < 1e-14) phase = 0.0;
  double d = 0.0;
  for (double x : a) d = std::max(d, std::abs(1.0 - std::polar(1.0, phase + x)));
  return {phase, d};
}

/// Diagonal fast path: U = diag(e^{i u_k}), V = diag(e^{i v_k}).
inline PhaseOptimum phase_optimized_distance_diagonal(std::span<const double> u_phases,
                                                      std::span<const double> v_phases) {
  if (u_phases.size() != v_phases.size())
    throw InvalidArgument("phase_optimized_distance: dimension mismatch");
  std::vector<double> rel(u_phases.size());
  for (std::size_t k = 0; k < rel.size(); ++k) rel[k] = v_phases[k] - u_phases[k];
  return align_phasors(rel);
}

namespace detail {

/// Coarse grid followed by golden-section refinement on the best cell.
template <class F>
PhaseOptimum minimize_on_circle(F&& f, int grid_points = 512, double tol = 1e-12) {
  const double h = 2.0 * std::numbers::pi / grid_points;
  double best_phi = 0.0;
  double best = f(0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double phi = i * h;
    const double v = f(phi);
    if (v < best) {
      best = v;
      best_phi = phi;
    }
  }
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_phi - h, hi = best_phi + h;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const double phi = 0.5 * (lo + hi);
  const double v = f(phi);
  if (v < best) return {wrap_angle(phi), v};
  return {wrap_angle(best_phi), best};
}

}  // namespace detail

inline PhaseOptimum phase_optimized_distance_search(const CMatrix& u, const CMatrix& v);

/// min over phi of || U - e^{i phi} V ||_2.
///
/// For a unitary pair the norm equals max_k |1 - e^{i phi} w_k| over the
/// eigenvalues w_k of U^dag V, so the optimum is found exactly from the
/// eigenphases. Other inputs fall back to a grid search with golden-section
/// refinement.
inline PhaseOptimum phase_optimized_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw InvalidArgument("phase_optimized_distance: dimension mismatch");
  if (u.size() == 0) return {};
  if (u.rows() == u.cols() && unitarity_defect(u) < kUnitarityTol && unitarity_defect(v) < kUnitarityTol) {
    Eigen::ComplexEigenSolver<CMatrix> solver(u.adjoint() * v, false);
    if (solver.info() != Eigen::Success)
      throw NumericalError("phase_optimized_distance: eigensolver did not converge");
    std::vector<double> angles(static_cast<std::size_t>(solver.eigenvalues().size()));
    for (std::size_t k = 0; k < angles.size(); ++k)
      angles[k] = std::arg(solver.eigenvalues()(static_cast<Eigen::Index>(k)));
    return align_phasors(angles);
  }
  return phase_optimized_distance_search(u, v);
}

/// Grid + refinement search, valid for any pair of equal-shape matrices.
inline PhaseOptimum phase_optimized_distance_search(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw InvalidArgument("phase_optimized_distance: dimension mismatch");
  return detail::minimize_on_circle(
      [&](double phi) { return spectral_norm(u - std::polar(1.0, phi) * v); });
}

/// B^dag M B for an isometry B (orthonormal columns).
inline CMatrix restrict_to(const CMatrix& m, const CMatrix& isometry) {
  return isometry.adjoint() * m * isometry;
}

}  // namespace blockade

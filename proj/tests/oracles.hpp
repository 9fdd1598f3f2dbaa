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

// Reference implementations that share no numerical route with the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "blockade/pauli.hpp"

namespace oracle {

using blockade::CMatrix;
using blockade::CVector;
using blockade::RMatrix;
using cplx = std::complex<double>;

/// exp(a) by Taylor series on a / 2^s, then s squarings.
inline CMatrix taylor_expm(const CMatrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.25) ++s;
  const CMatrix b = a / std::ldexp(1.0, s);
  CMatrix term = CMatrix::Identity(a.rows(), a.cols());
  CMatrix sum = term;
  for (int k = 1; k < 40; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
  return sum;
}

/// exp(-i h t)
inline CMatrix taylor_propagator(const CMatrix& h, double t) { return taylor_expm(cplx(0.0, -t) * h); }

/// Largest singular value by power iteration on a^dag a.
inline double power_norm(const CMatrix& a, int max_iter = 100000) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  CVector v(a.cols());
  for (auto& x : v) x = cplx(g(rng), g(rng));
  v.normalize();
  const CMatrix m = a.adjoint() * a;
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    CVector w = m * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double next = std::real(w.dot(m * w));
    v = w;
    if (std::abs(next - lambda) <= 1e-15 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

/// min over phi of ||u - e^{i phi} v||, dense grid then ternary refinement of
/// every local minimum.
inline double grid_phase_distance(const CMatrix& u, const CMatrix& v, int points = 4096) {
  auto f = [&](double phi) {
    Eigen::JacobiSVD<CMatrix> svd(u - std::polar(1.0, phi) * v);
    return svd.singularValues()(0);
  };
  const double h = 2.0 * std::numbers::pi / points;
  std::vector<double> vals(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) vals[static_cast<std::size_t>(i)] = f(i * h);
  double best = *std::min_element(vals.begin(), vals.end());
  for (int i = 0; i < points; ++i) {
    const double prev = vals[static_cast<std::size_t>((i + points - 1) % points)];
    const double next = vals[static_cast<std::size_t>((i + 1) % points)];
    const double here = vals[static_cast<std::size_t>(i)];
    if (here > prev || here > next) continue;
    double lo = (i - 1) * h, hi = (i + 1) * h;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (f(m1) < f(m2)) hi = m2;
      else lo = m1;
    }
    best = std::min(best, f(0.5 * (lo + hi)));
  }
  return best;
}

/// Kronecker-product construction of a Pauli sum (site 1 leftmost).
inline CMatrix kron_realize(const blockade::OperatorSum& op) {
  CMatrix x(2, 2), y(2, 2), z(2, 2), id = CMatrix::Identity(2, 2);
  // local order (|0>, |1>), bit 1 is sigma^z = +1
  x << 0, 1, 1, 0;
  y << 0, cplx(0, 1), cplx(0, -1), 0;
  z << -1, 0, 0, 1;
  const auto dim = Eigen::Index{1} << op.n_spins;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& t : op.terms) {
    CMatrix m = CMatrix::Identity(1, 1);
    for (int s = 1; s <= op.n_spins; ++s) {
      const CMatrix* f = &id;
      if (auto it = t.letters.find(s); it != t.letters.end())
        f = it->second == blockade::Pauli::X ? &x : it->second == blockade::Pauli::Y ? &y : &z;
      CMatrix k(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) k.block(2 * i, 2 * j, 2, 2) = m(i, j) * *f;
      m = k;
    }
    out += t.coefficient * m;
  }
  return out;
}

/// Classical Ising energy sum_i j1 s_i s_{i+1} + j2 s_i s_{i+2} with s = 2b - 1.
inline double ising_energy(const std::vector<int>& bits, double j1, double j2) {
  double e = 0.0;
  const auto n = bits.size();
  for (std::size_t i = 0; i + 1 < n; ++i) e += j1 * (2 * bits[i] - 1) * (2 * bits[i + 1] - 1);
  for (std::size_t i = 0; i + 2 < n; ++i) e += j2 * (2 * bits[i] - 1) * (2 * bits[i + 2] - 1);
  return e;
}

/// psi(t) for i d/dt psi = h psi by RK4, halving the step until two
/// successive answers agree.
inline CVector rk4(const CMatrix& h, const CVector& psi0, double t, double tol = 1e-12) {
  auto run = [&](int steps) {
    const double dt = t / steps;
    CVector psi = psi0;
    const cplx mi(0.0, -1.0);
    for (int s = 0; s < steps; ++s) {
      const CVector k1 = mi * (h * psi);
      const CVector k2 = mi * (h * (psi + 0.5 * dt * k1));
      const CVector k3 = mi * (h * (psi + 0.5 * dt * k2));
      const CVector k4 = mi * (h * (psi + dt * k3));
      psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
  };
  int steps = 64;
  CVector prev = run(steps);
  for (int it = 0; it < 14; ++it) {
    steps *= 2;
    CVector next = run(steps);
    if ((next - prev).cwiseAbs().maxCoeff() < tol) return next;
    prev = next;
  }
  return prev;
}

/// Inverse by one LU solve per unit column.
inline RMatrix column_solve_inverse(const RMatrix& c) {
  const Eigen::PartialPivLU<RMatrix> lu(c);
  RMatrix inv(c.rows(), c.cols());
  for (Eigen::Index j = 0; j < c.cols(); ++j) inv.col(j) = lu.solve(RMatrix::Identity(c.rows(), c.cols()).col(j));
  return inv;
}

inline CMatrix random_hermitian(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  return scale * 0.5 * (a + a.adjoint());
}

inline CMatrix random_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

}  // namespace oracle

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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "blockade/error.hpp"

namespace blockade {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Register size limit for dense realization (2^14 amplitudes per column).
inline constexpr int kDefaultMaxSpins = 14;

enum class Pauli : std::uint8_t { X, Y, Z };

/// Basis conventions used throughout the library:
///   * site 1 is the most significant bit of a basis index;
///   * bit value 1 is the sigma^z = +1 eigenstate, bit value 0 is sigma^z = -1.
inline int site_bit(std::uint64_t index, int n_spins, int site) {
  return static_cast<int>((index >> (n_spins - site)) & 1U);
}

inline int site_sz(std::uint64_t index, int n_spins, int site) {
  return site_bit(index, n_spins, site) ? +1 : -1;
}

inline std::uint64_t site_mask(int n_spins, int site) {
  return std::uint64_t{1} << (n_spins - site);
}

/// Basis index from a per-site bit list (sites 1..N in order).
inline std::uint64_t basis_index(std::span<const int> bits) {
  std::uint64_t k = 0;
  for (int b : bits) k = (k << 1) | static_cast<std::uint64_t>(b != 0);
  return k;
}

/// coefficient * (tensor product of site Paulis). Sites absent from `letters`
/// carry the identity.
struct PauliTerm {
  double coefficient = 0.0;
  std::map<int, Pauli> letters;

  PauliTerm() = default;
  PauliTerm(double c, std::map<int, Pauli> l) : coefficient(c), letters(std::move(l)) {}

  static PauliTerm single(double c, int site, Pauli p) { return {c, {{site, p}}}; }
  static PauliTerm pair(double c, int a, Pauli pa, int b, Pauli pb) {
    return {c, {{a, pa}, {b, pb}}};
  }

  bool is_diagonal() const {
    for (const auto& [site, p] : letters)
      if (p != Pauli::Z) return false;
    return true;
  }

  void validate(int n_spins) const {
    if (!std::isfinite(coefficient)) throw InvalidArgument("PauliTerm: non-finite coefficient");
    for (const auto& [site, p] : letters)
      if (site < 1 || site > n_spins)
        throw InvalidArgument("PauliTerm: site " + std::to_string(site) + " outside [1, " +
                              std::to_string(n_spins) + "]");
  }

  /// Action on a computational basis state: term |k> = amplitude |k'>.
  std::pair<std::uint64_t, cplx> apply(std::uint64_t k, int n_spins) const {
    std::uint64_t out = k;
    cplx amp{coefficient, 0.0};
    for (const auto& [site, p] : letters) {
      const std::uint64_t m = site_mask(n_spins, site);
      const bool up = (k & m) != 0;
      switch (p) {
        case Pauli::X:
          out ^= m;
          break;
        case Pauli::Y:
          // sigma^y |1> = i|0>, sigma^y |0> = -i|1>
          out ^= m;
          amp *= up ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
          break;
        case Pauli::Z:
          if (!up) amp = -amp;
          break;
      }
    }
    return {out, amp};
  }

  std::string to_string() const {
    std::string s = std::to_string(coefficient);
    for (const auto& [site, p] : letters) {
      s += ' ';
      s += p == Pauli::X ? 'X' : p == Pauli::Y ? 'Y' : 'Z';
      s += std::to_string(site);
    }
    return s;
  }

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Real-weighted sum of Pauli strings on an N-spin register. Real coefficients
/// make every realization Hermitian.
struct OperatorSum {
  int n_spins = 0;
  std::vector<PauliTerm> terms;

  OperatorSum() = default;
  explicit OperatorSum(int n) : n_spins(n) {
    if (n < 1) throw InvalidArgument("OperatorSum: n_spins must be positive");
  }

  /// Zero coefficients are dropped so that builders produce minimal sums.
  OperatorSum& add(PauliTerm t) {
    t.validate(n_spins);
    if (t.coefficient != 0.0) terms.push_back(std::move(t));
    return *this;
  }

  OperatorSum& operator+=(const OperatorSum& other) {
    if (other.n_spins != n_spins) throw InvalidArgument("OperatorSum: register size mismatch");
    for (const auto& t : other.terms) add(t);
    return *this;
  }

  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }

  bool is_diagonal() const {
    for (const auto& t : terms)
      if (!t.is_diagonal()) return false;
    return true;
  }

  bool empty() const { return terms.empty(); }

  /// <k| op |k> for an all-Z operator (fast path, no matrices).
  double diagonal_energy(std::uint64_t k) const {
    double e = 0.0;
    for (const auto& t : terms) {
      if (!t.is_diagonal()) throw InvalidArgument("diagonal_energy: operator has off-diagonal terms");
      double v = t.coefficient;
      for (const auto& [site, p] : t.letters)
        if (site_bit(k, n_spins, site) == 0) v = -v;
      e += v;
    }
    return e;
  }
};

/// Dense matrix of `op` on the full 2^N register.
inline CMatrix realize(const OperatorSum& op, int max_spins = kDefaultMaxSpins) {
  if (op.n_spins < 1) throw InvalidArgument("realize: empty register");
  if (op.n_spins > max_spins)
    throw InvalidArgument("realize: " + std::to_string(op.n_spins) + " spins exceeds cap of " +
                          std::to_string(max_spins));
  const std::uint64_t dim = std::uint64_t{1} << op.n_spins;
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : op.terms) {
    t.validate(op.n_spins);
    for (std::uint64_t k = 0; k < dim; ++k) {
      auto [out, amp] = t.apply(k, op.n_spins);
      m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(k)) += amp;
    }
  }
  return m;
}

/// Matrix of `op` restricted to the span of the given basis states. Throws if
/// the span is not invariant under `op`.
inline CMatrix realize_block(const OperatorSum& op, std::span<const std::uint64_t> basis) {
  std::unordered_map<std::uint64_t, Eigen::Index> pos;
  pos.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) pos.emplace(basis[i], static_cast<Eigen::Index>(i));
  const auto d = static_cast<Eigen::Index>(basis.size());
  CMatrix m = CMatrix::Zero(d, d);
  // Individual terms may leave the span (XX alone flips two spins); only the
  // summed amplitude outside it has to vanish.
  std::unordered_map<std::uint64_t, cplx> outside;
  for (const auto& t : op.terms) {
    t.validate(op.n_spins);
    for (Eigen::Index j = 0; j < d; ++j) {
      auto [out, amp] = t.apply(basis[static_cast<std::size_t>(j)], op.n_spins);
      auto it = pos.find(out);
      if (it == pos.end()) {
        if (amp != cplx{0.0, 0.0}) outside[out * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j)] += amp;
        continue;
      }
      m(it->second, j) += amp;
    }
  }
  double scale = 1.0;
  for (const auto& t : op.terms) scale = std::max(scale, std::abs(t.coefficient));
  for (const auto& [key, amp] : outside)
    if (std::abs(amp) > 1e-12 * scale) throw InvalidArgument("realize_block: operator leaves the block");
  return m;
}

/// Basis indices with exactly `excitations` sites in |1>, ascending.
inline std::vector<std::uint64_t> magnetization_sector(int n_spins, int excitations) {
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n_spins;
  for (std::uint64_t k = 0; k < dim; ++k)
    if (std::popcount(k) == excitations) out.push_back(k);
  return out;
}

}  // namespace blockade

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

#include <gtest/gtest.h>

#include <random>

#include "blockade/linalg.hpp"
#include "blockade/pauli.hpp"
#include "oracles.hpp"

namespace {

using namespace blockade;
using cplx = std::complex<double>;

TEST(Pauli, SigmaYConvention) {
  // sigma^y |1> = i |0>, sigma^y |0> = -i |1> on a single site.
  auto y = PauliTerm::single(1.0, 1, Pauli::Y);
  auto [o1, a1] = y.apply(1, 1);
  auto [o0, a0] = y.apply(0, 1);
  EXPECT_EQ(o1, 0u);
  EXPECT_EQ(a1, cplx(0, 1));
  EXPECT_EQ(o0, 1u);
  EXPECT_EQ(a0, cplx(0, -1));
}

TEST(Pauli, SiteOneIsMostSignificant) {
  EXPECT_EQ(site_mask(4, 1), 8u);
  std::vector<int> bits{1, 0, 0, 1};
  EXPECT_EQ(basis_index(bits), 9u);
  EXPECT_EQ(site_sz(9, 4, 1), 1);
  EXPECT_EQ(site_sz(9, 4, 2), -1);
}

TEST(Pauli, RealizeMatchesKroneckerOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n = 1; n <= 5; ++n) {
    OperatorSum op(n);
    for (int i = 1; i <= n; ++i) {
      op.add(PauliTerm::single(u(rng), i, Pauli::X));
      op.add(PauliTerm::single(u(rng), i, Pauli::Y));
      op.add(PauliTerm::single(u(rng), i, Pauli::Z));
      for (int j = i + 1; j <= n; ++j)
        for (auto a : {Pauli::X, Pauli::Y, Pauli::Z})
          for (auto b : {Pauli::X, Pauli::Y, Pauli::Z}) op.add(PauliTerm::pair(u(rng), i, a, j, b));
    }
    EXPECT_LT(max_abs_entry(realize(op) - oracle::kron_realize(op)), 1e-14) << "n=" << n;
  }
}

TEST(Pauli, RejectsBadSitesAndOversizedRegisters) {
  OperatorSum op(3);
  EXPECT_THROW(op.add(PauliTerm::single(1.0, 4, Pauli::X)), InvalidArgument);
  EXPECT_THROW(op.add(PauliTerm::single(1.0, 0, Pauli::X)), InvalidArgument);
  EXPECT_THROW(realize(OperatorSum(15)), InvalidArgument);
}

TEST(Pauli, RealizeBlockAcceptsXYRejectsX) {
  OperatorSum xy(3);
  xy.add(PauliTerm::pair(0.7, 1, Pauli::X, 2, Pauli::X));
  xy.add(PauliTerm::pair(0.7, 1, Pauli::Y, 2, Pauli::Y));
  const auto sector = magnetization_sector(3, 1);
  const CMatrix full = realize(xy);
  const CMatrix block = realize_block(xy, sector);
  for (std::size_t i = 0; i < sector.size(); ++i)
    for (std::size_t j = 0; j < sector.size(); ++j)
      EXPECT_EQ(block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                full(static_cast<Eigen::Index>(sector[i]), static_cast<Eigen::Index>(sector[j])));
  OperatorSum x(3);
  x.add(PauliTerm::single(0.3, 2, Pauli::X));
  EXPECT_THROW(realize_block(x, sector), InvalidArgument);
}

TEST(Expm, MatchesTaylorOracleOnRandomHermitian) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix h = oracle::random_hermitian(8, rng);
    for (double t : {0.0, 0.3, 1.7}) {
      const CMatrix u = expm_unitary(h, t).matrix;
      EXPECT_LT(max_abs_entry(u - oracle::taylor_propagator(h, t)), 1e-10);
    }
  }
}

TEST(Expm, SignFlipGivesInverse) {
  std::mt19937_64 rng(3);
  const CMatrix h = oracle::random_hermitian(6, rng);
  const CMatrix prod = expm_unitary(h, 0.9, +1).matrix * expm_unitary(h, 0.9, -1).matrix;
  EXPECT_LT(max_abs_entry(prod - CMatrix::Identity(6, 6)), 1e-12);
}

TEST(Expm, AgreesWithRk4StateEvolution) {
  std::mt19937_64 rng(5);
  const CMatrix h = oracle::random_hermitian(8, rng);
  CVector psi = CVector::Zero(8);
  psi(3) = 1.0;
  const CVector exact = expm_unitary(h, 1.3).matrix * psi;
  EXPECT_LT((exact - oracle::rk4(h, psi, 1.3)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Expm, RejectsNonHermitianAndNonFinite) {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(HermitianEvolution{h}, InvalidArgument);
  h(1, 0) = 1.0;
  h(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(HermitianEvolution{h}, InvalidArgument);
}

TEST(SpectralNorm, MatchesPowerIteration) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = oracle::random_matrix(16, rng);
    EXPECT_NEAR(spectral_norm(a), oracle::power_norm(a), 1e-10);
  }
}

TEST(SpectralNorm, ZeroAndIdentity) {
  EXPECT_EQ(spectral_norm(CMatrix::Zero(4, 4)), 0.0);
  EXPECT_NEAR(spectral_norm(CMatrix::Identity(5, 5)), 1.0, 1e-15);
}

TEST(PhaseDistance, GlobalPhaseIsRemoved) {
  const double beta = 0.8;
  const CMatrix u = CMatrix::Identity(3, 3);
  const CMatrix v = std::polar(1.0, beta) * u;
  const auto opt = phase_optimized_distance(u, v);
  EXPECT_NEAR(opt.distance, 0.0, 1e-14);
  EXPECT_NEAR(opt.phase, 2 * std::numbers::pi - beta, 1e-12);
}

TEST(PhaseDistance, IdenticalUnitariesGiveZeroPhase) {
  std::mt19937_64 rng(1);
  const CMatrix u = expm_unitary(oracle::random_hermitian(4, rng), 1.0).matrix;
  const auto opt = phase_optimized_distance(u, u);
  EXPECT_EQ(opt.phase, 0.0);
  EXPECT_LT(opt.distance, 1e-13);
}

TEST(PhaseDistance, UnitaryRouteMatchesDenseGridOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const CMatrix u = expm_unitary(oracle::random_hermitian(4, rng), 0.7).matrix;
    const CMatrix v = expm_unitary(oracle::random_hermitian(4, rng, 0.3), 0.7).matrix;
    EXPECT_NEAR(phase_optimized_distance(u, v).distance, oracle::grid_phase_distance(u, v), 1e-9);
    EXPECT_NEAR(phase_optimized_distance_search(u, v).distance, oracle::grid_phase_distance(u, v), 1e-9);
  }
}

TEST(PhaseDistance, NeverExceedsRawDistance) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix u = expm_unitary(oracle::random_hermitian(5, rng), 1.0).matrix;
    const CMatrix v = expm_unitary(oracle::random_hermitian(5, rng), 1.0).matrix;
    EXPECT_LE(phase_optimized_distance(u, v).distance, spectral_norm(u - v) + 1e-12);
  }
}

TEST(PhaseDistance, DiagonalPathMatchesGeneral) {
  const std::vector<double> a{0.1, -0.4, 2.0, 3.0}, b{0.3, 0.2, -1.0, 2.9};
  CMatrix u = CMatrix::Zero(4, 4), v = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    u(k, k) = std::polar(1.0, a[static_cast<std::size_t>(k)]);
    v(k, k) = std::polar(1.0, b[static_cast<std::size_t>(k)]);
  }
  EXPECT_NEAR(phase_optimized_distance_diagonal(a, b).distance, phase_optimized_distance(u, v).distance, 1e-12);
  EXPECT_THROW(phase_optimized_distance_diagonal(a, std::vector<double>{1.0}), InvalidArgument);
}

TEST(PhaseDistance, DimensionMismatchThrows) {
  EXPECT_THROW(phase_optimized_distance(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), InvalidArgument);
}

TEST(StateVector, RejectsUnnormalized) {
  CVector v = CVector::Ones(2);
  EXPECT_THROW(StateVector{v}, InvalidArgument);
  EXPECT_NO_THROW(StateVector(v / std::sqrt(2.0)));
}

}  // namespace

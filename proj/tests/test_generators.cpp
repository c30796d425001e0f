// Copyright 2026 The oscsym Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oscsym/oscsym.hpp"

using namespace oscsym;

namespace {

CoefficientVector random_coefficients(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 7> a{};
  for (auto& v : a) v = u(rng);
  return CoefficientVector::from_array(a);
}

double residual(const SparseMatrix& delta, int n) { return safe_residual(delta, n, n - 5); }

}  // namespace

TEST(Subsets, Assignment) {
  for (auto id : {GeneratorId::iL0, GeneratorId::iM1, GeneratorId::iM2, GeneratorId::O0})
    EXPECT_EQ(subset_of(id), Subset::J0);
  for (auto id : {GeneratorId::Op, GeneratorId::L1p, GeneratorId::L2p}) EXPECT_EQ(subset_of(id), Subset::Jplus);
  for (auto id : {GeneratorId::Om, GeneratorId::L1m, GeneratorId::L2m}) EXPECT_EQ(subset_of(id), Subset::Jminus);
  EXPECT_EQ(generator_from_name("L1+"), GeneratorId::L1p);
  EXPECT_FALSE(generator_from_name("L3+").has_value());
}

TEST(BasicSuperoperators, Commutators) {
  const int n = 10;
  const auto b = basic_superoperators(n);
  const SparseMatrix one = SuperOperator::identity(n).matrix();
  EXPECT_LE(residual(SparseMatrix(commutator(b.A.matrix(), b.A_dag.matrix()) - one), n), 1e-14);
  EXPECT_LE(residual(SparseMatrix(commutator(b.At.matrix(), b.At_dag.matrix()) - one), n), 1e-14);
  EXPECT_EQ(detail::max_abs(commutator(b.A.matrix(), b.At.matrix())), 0.0);
  EXPECT_EQ(detail::max_abs(commutator(b.A.matrix(), b.At_dag.matrix())), 0.0);
}

TEST(BasicSuperoperators, TildeActsFromTheRight) {
  const int n = 6;
  const auto b = basic_superoperators(n);
  // A~ = 1 x a^dag lowers the bra, A~^dag raises it
  const CMatrix out = oscsym::apply(b.At, ket_bra(n, 0, 1));
  EXPECT_LE(detail::max_abs(CMatrix(out - ket_bra(n, 0, 0))), 1e-15);
  const CMatrix up = oscsym::apply(b.At_dag, ket_bra(n, 0, 0));
  EXPECT_LE(detail::max_abs(CMatrix(up - ket_bra(n, 0, 1))), 1e-15);
}

TEST(Generator, O0OnDiagonalProjector) {
  const int n = 10;
  const auto o0 = generator(GeneratorId::O0, n);
  for (int k = 1; k < n - 1; ++k) {
    const CMatrix out = oscsym::apply(o0, ket_bra(n, k, k));
    const CMatrix expect = 0.5 * ((k + 1) * ket_bra(n, k + 1, k + 1) - k * ket_bra(n, k - 1, k - 1));
    ASSERT_LE(detail::max_abs(CMatrix(out - expect)), 1e-14) << k;
  }
}

TEST(Generator, IL0IsDiagonal) {
  const int n = 8;
  const auto il0 = generator(GeneratorId::iL0, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      const CMatrix out = oscsym::apply(il0, ket_bra(n, m, k));
      const CMatrix expect = (0.5 * I_UNIT * double(m - k)) * ket_bra(n, m, k);
      ASSERT_LE(detail::max_abs(CMatrix(out - expect)), 1e-14);
    }
  }
}

TEST(Generator, AllAdjointSymmetric) {
  const GeneratorSet g(10);
  for (auto id : ALL_GENERATORS) EXPECT_TRUE(is_adjoint_symmetric(g[id], 1e-12)) << name_of(id);
}

TEST(Generator, HermiticityBySubset) {
  const GeneratorSet g(10);
  for (auto id : ALL_GENERATORS) {
    const CMatrix m = g[id].dense();
    const double sign = subset_of(id) == Subset::J0 ? -1.0 : 1.0;
    EXPECT_LE(detail::max_abs(CMatrix(m.adjoint() - sign * m)), 1e-12) << name_of(id);
  }
}

TEST(Generator, RejectsSmallCutoff) { EXPECT_THROW(generator(GeneratorId::O0, 5), PreconditionError); }

TEST(Commutator, TableExamples) {
  const int n = 12;
  const GeneratorSet g(n);
  auto c = [&](GeneratorId a, GeneratorId b) { return commutator(g[a].matrix(), g[b].matrix()); };
  EXPECT_LE(residual(SparseMatrix(c(GeneratorId::iL0, GeneratorId::iM1) + g[GeneratorId::iM2].matrix()), n), 1e-12);
  EXPECT_LE(residual(SparseMatrix(c(GeneratorId::L1p, GeneratorId::L2m) - 2.0 * g[GeneratorId::iL0].matrix()), n),
            1e-12);
  EXPECT_LE(residual(c(GeneratorId::Op, GeneratorId::L1p), n), 1e-12);
  EXPECT_LE(residual(SparseMatrix(c(GeneratorId::Op, GeneratorId::L1m) + 2.0 * g[GeneratorId::iM2].matrix()), n),
            1e-12);
  EXPECT_EQ(pair_label(GeneratorId::iM1, GeneratorId::iM2), "commutator[iM1,iM2]=iL0");
  EXPECT_EQ(pair_label(GeneratorId::Op, GeneratorId::L1m), "commutator[O+,L1-]=-2iM2");
}

TEST(CommutationTable, FullSweepAtTwelve) {
  const auto r = verify_commutation_table(12, 1e-10);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.pairs.size(), 45u);
  EXPECT_TRUE(r.structure_ok);
  EXPECT_TRUE(r.antisymmetric);
  EXPECT_LE(r.max_residual, 1e-10);
}

TEST(CommutationTable, NamesFailingPair) {
  const auto r = verify_commutation_table(12, -1.0);
  EXPECT_FALSE(r.passed);
  ASSERT_EQ(r.failures.size(), 45u);
  EXPECT_NE(std::find(r.failures.begin(), r.failures.end(), "commutator[iM1,iM2]=iL0"), r.failures.end());
  EXPECT_THROW(verify_commutation_table(7, 1e-10), PreconditionError);
}

TEST(TraceIdentities, ConservingGeneratorsAnnihilateTrace) {
  std::mt19937_64 rng(21);
  const int n = 12;
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = random_density(n, n - 6, rng);
    for (auto id : {GeneratorId::O0, GeneratorId::Op, GeneratorId::L1p, GeneratorId::L2p}) {
      ASSERT_LE(std::abs(trace_identities(id, rho)), 1e-10) << name_of(id);
    }
  }
}

TEST(TraceIdentities, MomentsOfJMinus) {
  const int n = 10;
  EXPECT_NEAR(std::abs(trace_identities(GeneratorId::Om, DensityMatrix::fock(n, 0)) - 1.0), 0.0, 1e-14);
  CVector psi = CVector::Zero(n);
  psi(0) = 1.0;
  psi(2) = 1.0;
  const DensityMatrix rho(0.5 * psi * psi.adjoint());
  EXPECT_NEAR(std::abs(trace_identities(GeneratorId::L1m, rho) - std::sqrt(2.0)), 0.0, 1e-14);
}

TEST(TraceIdentities, RejectsEdgeSupport) {
  EXPECT_THROW(trace_identities(GeneratorId::Op, DensityMatrix::fock(10, 8)), PreconditionError);
}

TEST(BuildK, FreeEvolution) {
  const int n = 8;
  const double w = 1.3;
  const auto k = build_K({2 * w, 0, 0, 0, 0, 0, 0}, n);
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      const CMatrix out = oscsym::apply(k, ket_bra(n, m, j));
      ASSERT_LE(detail::max_abs(CMatrix(out - (I_UNIT * w * double(m - j)) * ket_bra(n, m, j))), 1e-13);
    }
  }
}

TEST(BuildK, ZeroAndKL) {
  const int n = 8;
  EXPECT_EQ(detail::max_abs(build_K({}, n).matrix()), 0.0);
  const GeneratorSet g(n);
  const auto k = build_K({2, 0, 0, 1, -2, 0, 0}, g);
  const SuperOperator expect =
      2.0 * g[GeneratorId::iL0] + (g[GeneratorId::O0] - 0.5 * g.identity()) - 2.0 * g[GeneratorId::Op];
  EXPECT_LE(safe_residual(k, expect), 1e-15);
  // the two differ only at the top level, where build_K keeps the trace exact
  EXPECT_GT(detail::max_abs(SparseMatrix(k.matrix() - expect.matrix())), 0.1);
}

TEST(BuildK, TopLevelKeepsTraceExact) {
  const int n = 8;
  const GeneratorSet g(n);
  for (const auto& c : {CoefficientVector{2, 0, 0, 1, -2, 0, 0}, CoefficientVector{0.3, -0.2, 0.5, 0.7, 0.1, -0.4, 0.2}}) {
    const CMatrix row = vectorize(CMatrix(CMatrix::Identity(n, n))).transpose() * build_K(c, g).dense();
    EXPECT_LE(row.cwiseAbs().maxCoeff(), 1e-13);
  }
  EXPECT_LE(safe_residual(g.unit(), g.identity()), 1e-15);
}

TEST(BuildK, RandomCoefficientsAreConservingAndSymmetric) {
  std::mt19937_64 rng(5);
  const int n = 12;
  const GeneratorSet g(n);
  for (int trial = 0; trial < 10; ++trial) {
    const auto k = build_K(random_coefficients(rng), g);
    EXPECT_TRUE(is_adjoint_symmetric(k, 1e-12));
    for (int s = 0; s < 5; ++s) {
      const DensityMatrix rho = random_density(n, n - 6, rng);
      ASSERT_LE(std::abs(trace_pair(k, rho)), 1e-10);
    }
  }
}

TEST(BuildK, JMinusAdmixtureBreaksTraceAnnihilation) {
  std::mt19937_64 rng(6);
  const int n = 12;
  const GeneratorSet g(n);
  for (auto id : {GeneratorId::Om, GeneratorId::L1m, GeneratorId::L2m}) {
    const auto k = build_K(random_coefficients(rng), g) + 0.1 * g[id];
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) worst = std::max(worst, std::abs(trace_pair(k, random_density(n, n - 6, rng))));
    EXPECT_GT(worst, 1e-3) << name_of(id);
  }
}

TEST(BuildK, RejectsNonFinite) {
  CoefficientVector c;
  c.h1 = std::numeric_limits<double>::infinity();
  EXPECT_THROW(build_K(c, 8), PreconditionError);
}

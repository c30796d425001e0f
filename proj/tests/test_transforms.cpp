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

// Closed-form maps checked against the exact 4x4 similarity exp(aJ) M exp(-aJ).
CoefficientVector fourdim_oracle(const TransformStep& s, const CoefficientVector& c) {
  const Matrix4c j = s.parameter() * fourdim_generator(s.generator()).matrix;
  const Matrix4c e = matrix_exponential(CMatrix(j)), ei = matrix_exponential(CMatrix(-j));
  return decompose_fourdim(e * rep_of(c) * ei).coefficients;
}

const std::array<GeneratorId, 7> MAPS = {GeneratorId::iL0, GeneratorId::iM1, GeneratorId::iM2, GeneratorId::O0,
                                         GeneratorId::Op,  GeneratorId::L1p, GeneratorId::L2p};

}  // namespace

TEST(TransformStep, RejectsJMinusAndNonFinite) {
  EXPECT_THROW(TransformStep(GeneratorId::Om, 0.1), PreconditionError);
  EXPECT_THROW(TransformStep(GeneratorId::O0, std::nan("")), PreconditionError);
}

TEST(TransformSequence, Inverse) {
  const TransformSequence s{{GeneratorId::iM2, 0.3}, {GeneratorId::L1p, -0.2}};
  const auto inv = s.inverse();
  ASSERT_EQ(inv.size(), 2u);
  EXPECT_EQ(inv.steps()[0].generator(), GeneratorId::L1p);
  EXPECT_EQ(inv.steps()[0].parameter(), 0.2);
  EXPECT_EQ(inv.steps()[1].parameter(), -0.3);
}

TEST(CoefficientMap, MatchesFourDimSimilarity) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (auto id : MAPS) {
    for (int k = 0; k < 30; ++k) {
      const TransformStep s(id, u(rng));
      const auto c = random_coefficients(rng);
      ASSERT_LE(max_difference(coefficient_map(s, c), fourdim_oracle(s, c)), 1e-12) << name_of(id);
    }
  }
}

TEST(CoefficientMap, DilationDoublesDissipativePart) {
  const CoefficientVector c{0.3, 0.1, -0.2, 0.7, 0.4, -0.5, 0.6};
  const auto m = coefficient_map({GeneratorId::O0, std::log(2.0)}, c);
  EXPECT_NEAR(m.gp, 0.8, 1e-15);
  EXPECT_NEAR(m.g1, -1.0, 1e-15);
  EXPECT_NEAR(m.g2, 1.2, 1e-15);
  EXPECT_EQ(m.h0, c.h0);
  EXPECT_EQ(m.h1, c.h1);
  EXPECT_EQ(m.h2, c.h2);
  EXPECT_EQ(m.g0, c.g0);
}

TEST(CoefficientMap, SqueezeRemovesH1) {
  const auto m = coefficient_map({GeneratorId::iM2, std::log(2.0)}, {2, 1.2, 0, 0, 0, 0, 0});
  EXPECT_NEAR(m.h0, 1.6, 1e-14);
  EXPECT_NEAR(m.h1, 0.0, 1e-14);
}

TEST(CoefficientMap, L1PlusOnCaldeiraLeggett) {
  const double w = 1.0, g = 0.3, b = 1.0, zeta = 0.5;
  const CoefficientVector cl{2 * w, 0, -g, g, -2 * g * b, -2 * g * b, 0};
  const auto m = coefficient_map({GeneratorId::L1p, zeta}, cl);
  EXPECT_NEAR(m.g2, 2 * zeta * w, 1e-14);
  EXPECT_NEAR(-m.gp / (2 * g), b + 0.25, 1e-14);
}

TEST(CoefficientMap, RelaxationRateInvariant) {
  std::mt19937_64 rng(2);
  for (auto id : MAPS) {
    const auto c = random_coefficients(rng);
    EXPECT_EQ(coefficient_map({id, 0.77}, c).g0, c.g0);
  }
}

TEST(CoefficientMap, LengthInvariants) {
  std::mt19937_64 rng(3);
  for (auto id : {GeneratorId::iL0, GeneratorId::iM1, GeneratorId::iM2}) {
    const auto c = random_coefficients(rng);
    const auto [h, g] = length_invariants(c);
    const auto [h2, g2] = length_invariants(coefficient_map({id, 0.9}, c));
    EXPECT_NEAR(h, h2, 1e-12);
    EXPECT_NEAR(g, g2, 1e-12);
  }
}

TEST(ApplySequence, EmptyAndInverse) {
  std::mt19937_64 rng(4);
  const auto c = random_coefficients(rng);
  EXPECT_EQ(max_difference(apply_sequence({}, c), c), 0.0);
  const TransformSequence s{{GeneratorId::iM1, 0.4}, {GeneratorId::Op, -0.7}, {GeneratorId::O0, 0.2}};
  EXPECT_LE(max_difference(apply_sequence(s.inverse(), apply_sequence(s, c)), c), 1e-12);
}

TEST(ApplySequence, HpzInvariance) {
  const double w = 1.0, g = 0.1, b = 1.0, d = 0.5;
  const CoefficientVector hpz{2 * w, 0, -g, g, -2 * g * b, -2 * g * b, -d};
  const auto m = apply_sequence(hpz_invariance_sequence(std::log(2.0), 0.5), hpz);
  EXPECT_NEAR(-m.gp / (2 * g), 2.25, 1e-12);
  EXPECT_NEAR(-m.g2 / (2 * w), 0.25, 1e-12);
}

TEST(Similarity, IdentitySequence) {
  const CoefficientVector c{0.3, -0.2, 0.5, 0.7, 0.1, -0.4, 0.2};
  const auto k = superop_similarity({}, c, 10);
  EXPECT_LE(safe_residual(k, build_K(c, 10)), 1e-15);
}

TEST(Similarity, EachMapAgreesWithClosedForm) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 12;
  for (auto id : MAPS) {
    for (int k = 0; k < 5; ++k) {
      const TransformSequence s{{id, u(rng)}};
      const auto c = random_coefficients(rng);
      const auto k1 = superop_similarity(s, c, n);
      const auto k2 = build_K(apply_sequence(s, c), n);
      ASSERT_LE(safe_residual(k1, k2), 1e-8) << name_of(id);
    }
  }
}

TEST(Similarity, PreservesAdjointSymmetry) {
  const TransformSequence s{{GeneratorId::L2p, 0.6}, {GeneratorId::iM1, -0.4}};
  const auto k = superop_similarity(s, {0.3, -0.2, 0.5, 0.7, 0.1, -0.4, 0.2}, 10);
  EXPECT_TRUE(is_adjoint_symmetric(k, 1e-12));
}

TEST(Similarity, AgreesWithDenseExponentialOnSafeBlock) {
  // at small parameters the truncated exp route is accurate on low levels
  const int n = 14;
  const TransformSequence s{{GeneratorId::iL0, 0.3}};
  const CoefficientVector c{0.3, -0.2, 0.5, 0.7, 0.1, -0.4, 0.2};
  const CMatrix sm = transformation_operator(s, n).dense();
  const CMatrix dense = sm * build_K(c, n).dense() * transformation_operator(s.inverse(), n).dense();
  const SparseMatrix d = dense.sparseView();
  EXPECT_LE(safe_residual(SparseMatrix(d - superop_similarity(s, c, n).matrix()), n, n - 5), 1e-10);
}

TEST(Similarity, SemigroupConjugation) {
  const int n = 10;
  const CoefficientVector c{2, 0, 0, 0.5, -1.0, 0, 0};
  const TransformSequence s{{GeneratorId::iM2, 0.4}};
  const CMatrix kp = superop_similarity(s, c, n).dense();
  const CMatrix v1 = matrix_exponential(CMatrix(-0.3 * kp)), v2 = matrix_exponential(CMatrix(-0.5 * kp));
  const CMatrix v12 = matrix_exponential(CMatrix(-0.8 * kp));
  EXPECT_LE(detail::max_abs(CMatrix(v1 * v2 - v12)), 1e-8);
}

TEST(Similarity, ClosureInFourDims) {
  std::mt19937_64 rng(8);
  const TransformSequence s{{GeneratorId::Op, 0.3}, {GeneratorId::iM1, 0.9}, {GeneratorId::L2p, -0.6}};
  Matrix4c m = rep_of(random_coefficients(rng));
  for (auto it = s.steps().rbegin(); it != s.steps().rend(); ++it) {
    const Matrix4c j = it->parameter() * fourdim_generator(it->generator()).matrix;
    m = matrix_exponential(CMatrix(j)) * m * matrix_exponential(CMatrix(-j));
  }
  EXPECT_LE(decompose_fourdim(m).out_of_span, 1e-12);
}

TEST(Similarity, RejectsLargeParameter) {
  EXPECT_THROW(superop_similarity({{GeneratorId::O0, 11.0}}, CoefficientVector{}, 8), PreconditionError);
}

TEST(Gibbs, Vacuum) {
  const auto g = gibbs_from_vacuum(0.0, 10);
  EXPECT_LE(detail::max_abs(CMatrix(g.state.matrix() - ket_bra(10, 0, 0))), 1e-15);
}

TEST(Gibbs, ThirdRatio) {
  const int n = 40;
  const auto g = gibbs_from_vacuum(std::log(2.0), n);
  EXPECT_NEAR(g.q, 1.0 / 3.0, 1e-15);
  double off = 0.0;
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(g.state.matrix()(i, i).real(), (2.0 / 3.0) * std::pow(1.0 / 3.0, i), 1e-12);
    for (int j = 0; j < n; ++j)
      if (i != j) off = std::max(off, std::abs(g.state.matrix()(i, j)));
  }
  EXPECT_EQ(off, 0.0);
  EXPECT_NEAR(g.normalization, std::sqrt((1 + g.q) / (1 - g.q)), 1e-12);
  EXPECT_FALSE(g.truncation_warning);
  EXPECT_TRUE(gibbs_from_vacuum(std::log(2.0), 10).truncation_warning);
}

TEST(Gibbs, MatchesExponentialOfO0) {
  const int n = 12;
  const double alpha = 0.5;
  const CMatrix s = matrix_exponential(alpha * generator(GeneratorId::O0, n).dense());
  const CMatrix rho = unvectorize(s * vectorize(ket_bra(n, 0, 0)), n);
  const double tr = rho.trace().real();
  // the truncated exponential is accurate on levels well below the cutoff
  const auto g = gibbs_from_vacuum(alpha, n);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(rho(k, k).real() / tr, g.state.matrix()(k, k).real(), 1e-6);
}

TEST(Displacement, UnitaryAndSymmetric) {
  const int n = 14;
  const cplx z(0.3, 0.2);
  const auto d = displacement_superops(z, 0.0, n);
  const CMatrix dd = d.D.dense() * d.D.dense().adjoint();
  // truncation reaches every level, so compare on the low block only
  double worst = 0.0;
  for (int r = 0; r < n * n; ++r) {
    for (int c = 0; c < n * n; ++c) {
      if (detail::level(r, n) > 3 || detail::level(c, n) > 3) continue;
      worst = std::max(worst, std::abs(dd(r, c) - (r == c ? 1.0 : 0.0)));
    }
  }
  EXPECT_LE(worst, 1e-9);
  EXPECT_TRUE(is_adjoint_symmetric(d.D1, 1e-10));
  EXPECT_TRUE(is_adjoint_symmetric(d.D, 1e-10));
  const auto zero = displacement_superops(0.0, 0.0, 8);
  EXPECT_LE(detail::max_abs(CMatrix(zero.D.dense() - CMatrix::Identity(64, 64))), 1e-15);
}

TEST(Displacement, ShiftsBasicOperator) {
  const int n = 12;
  const cplx z(0.4, -0.3);
  const auto shifted = similarity_by_D1(z, [](const GeneratorSet& g) {
    return basic_superoperators(g.dim()).A.matrix();
  }, n);
  const auto b = basic_superoperators(n);
  const SuperOperator expect = b.A - z * SuperOperator::identity(n);
  EXPECT_LE(safe_residual(shifted, expect), 1e-12);
  const auto adag = similarity_by_D1(z, [](const GeneratorSet& g) {
    return basic_superoperators(g.dim()).A_dag.matrix();
  }, n);
  EXPECT_LE(safe_residual(adag, b.A_dag), 1e-12);
}

TEST(VacuumGenerator, AnnihilatesVacuum) {
  const int n = 10;
  const auto c = vacuum_annihilating_K(1.0, 0.5, 0.3, -0.2);
  const CVector r = build_K(c, n).matrix() * vectorize(ket_bra(n, 0, 0));
  EXPECT_LE(r.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(max_difference(vacuum_annihilating_K(0, 0, 0, 0), {}), 0.0);
}

TEST(VacuumGenerator, GibbsForm) {
  const double h0 = 1.0, g0 = 0.5, h1 = 0.3, h2 = -0.2;
  const double alpha = 0.6, b = std::exp(alpha) / 2;
  const auto m = coefficient_map({GeneratorId::O0, alpha}, vacuum_annihilating_K(h0, g0, h1, h2));
  const CoefficientVector expect{h0, h1, h2, g0, -2 * b * g0, 2 * b * h2, -2 * b * h1};
  EXPECT_LE(max_difference(m, expect), 1e-14);
}

TEST(VacuumGenerator, Displaced) {
  const int n = 16;
  const auto c = vacuum_annihilating_K(1.0, 0.5, 0.3, -0.2);
  const auto zero = displaced_vacuum_generator(c, 0.0, n);
  EXPECT_LE(safe_residual(zero.generator, build_K(c, n)), 1e-14);
  const auto r = displaced_vacuum_generator(c, cplx(0.3, 0.2), n);
  EXPECT_LE(r.decomposition_residual, 1e-9);
  // the coherent state is not renormalized, so its tail sits on the cutoff
  EXPECT_LE(r.stationarity_residual, 1e-8);
}

TEST(FrequencyDiagonalization, Examples) {
  const auto f = diagonalize_frequency(2.0, 1.2);
  EXPECT_NEAR(f.omega0_prime, 0.8, 1e-15);
  EXPECT_NEAR(f.phi, std::log(2.0), 1e-15);
  const auto m = coefficient_map({GeneratorId::iM2, f.phi}, {2.0, 1.2, 0, 0, 0, 0, 0});
  EXPECT_NEAR(m.h1, 0.0, 1e-14);
  EXPECT_NEAR(m.h0 / 2, f.omega0_prime, 1e-14);
  const auto free = diagonalize_frequency(2.0, 0.0);
  EXPECT_EQ(free.omega0_prime, 1.0);
  EXPECT_EQ(free.phi, 0.0);
  EXPECT_THROW(diagonalize_frequency(2.0, 2.0), PreconditionError);
}

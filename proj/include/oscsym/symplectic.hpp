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

#pragma once

#include <array>
#include <string>
#include <vector>

#include "oscsym/generators.hpp"

namespace oscsym {

using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;

namespace detail {

inline Matrix2c pauli(int k) {
  Matrix2c s;
  switch (k) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, -I_UNIT, I_UNIT, 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      s = Matrix2c::Identity();
  }
  return s;
}

inline Matrix4c blocks(const Matrix2c& p, const Matrix2c& q, const Matrix2c& r, const Matrix2c& s) {
  Matrix4c m;
  m << p, q, r, s;
  return m;
}

}  // namespace detail

/// 4x4 image of a generator in the basis (A, A~, A^dag, A~^dag).
struct FourDimRep {
  GeneratorId id;
  Matrix4c matrix;
};

inline Matrix4c beta_matrix() {
  const Matrix2c one = Matrix2c::Identity(), zero = Matrix2c::Zero();
  return detail::blocks(zero, one, -one, zero);
}

inline FourDimRep fourdim_generator(GeneratorId id) {
  using detail::blocks;
  const Matrix2c one = Matrix2c::Identity(), zero = Matrix2c::Zero();
  const Matrix2c s1 = detail::pauli(1), s2 = detail::pauli(2), s3 = detail::pauli(3);
  const cplx i = I_UNIT;
  Matrix4c m;
  switch (id) {
    case GeneratorId::iL0:
      m = 0.5 * i * blocks(s3, zero, zero, -s3);
      break;
    case GeneratorId::iM1:
      m = 0.5 * i * blocks(zero, s3, -s3, zero);
      break;
    case GeneratorId::iM2:
      m = 0.5 * blocks(zero, one, one, zero);
      break;
    case GeneratorId::O0:
      m = 0.5 * blocks(zero, s1, s1, zero);
      break;
    case GeneratorId::Op:
      m = 0.5 * blocks(-one, s1, -s1, one);
      break;
    case GeneratorId::L1p:
      m = 0.5 * blocks(s1, -one, one, -s1);
      break;
    case GeneratorId::L2p:
      m = 0.5 * blocks(s2, i * s3, i * s3, s2);
      break;
    case GeneratorId::Om:
      m = 0.5 * blocks(one, s1, -s1, -one);
      break;
    case GeneratorId::L1m:
      m = 0.5 * blocks(s1, one, -one, -s1);
      break;
    case GeneratorId::L2m:
      m = 0.5 * blocks(s2, -i * s3, -i * s3, s2);
      break;
  }
  return {id, m};
}

inline double max_abs4(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

struct FourDimTableReport {
  std::vector<PairCheck> pairs;
  double max_residual = 0.0;
  double max_beta_symmetry = 0.0;  // max |beta J - (beta J)^T|
  bool passed = false;
  std::vector<std::string> failures;
};

inline Matrix4c fourdim_table_rhs(GeneratorId j, GeneratorId jp) {
  const TableEntry e = table_entry(j, jp);
  if (e.coefficient == 0) return Matrix4c::Zero();
  return static_cast<double>(e.coefficient) * fourdim_generator(e.target).matrix;
}

inline FourDimTableReport verify_fourdim_table(double tol = 1e-14) {
  FourDimTableReport r;
  const Matrix4c beta = beta_matrix();
  for (auto id : ALL_GENERATORS) {
    const Matrix4c bj = beta * fourdim_generator(id).matrix;
    r.max_beta_symmetry = std::max(r.max_beta_symmetry, max_abs4(bj - bj.transpose()));
  }
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      const GeneratorId a = ALL_GENERATORS[i], b = ALL_GENERATORS[j];
      const Matrix4c x = fourdim_generator(a).matrix, y = fourdim_generator(b).matrix;
      const double res = max_abs4(x * y - y * x - fourdim_table_rhs(a, b));
      PairCheck p{a, b, pair_label(a, b), res, res <= tol};
      r.max_residual = std::max(r.max_residual, res);
      if (!p.pass) r.failures.push_back(p.label);
      r.pairs.push_back(std::move(p));
    }
  }
  if (r.max_beta_symmetry > tol) r.failures.emplace_back("beta J symmetry");
  r.passed = r.failures.empty();
  return r;
}

/// max |S^T beta S - beta| for S = exp(theta J).
inline double symplectic_check(GeneratorId id, double theta) {
  detail::require(std::abs(theta) <= 5.0, "symplectic_check: |theta| must be at most 5");
  const Matrix4c s = matrix_exponential(CMatrix(theta * fourdim_generator(id).matrix));
  const Matrix4c beta = beta_matrix();
  return max_abs4(s.transpose() * beta * s - beta);
}

/// Ratio (S^T beta S)_{13} / beta_{13} when the generator is shifted by shift * 1.
/// Equals exp(2 shift theta); 1 means the quadratic condition holds.
inline cplx scalar_shift_violation(GeneratorId id, double theta, double shift) {
  const Matrix4c j = fourdim_generator(id).matrix + shift * Matrix4c::Identity();
  const Matrix4c s = matrix_exponential(CMatrix(theta * j));
  const Matrix4c q = s.transpose() * beta_matrix() * s;
  return q(0, 2) / beta_matrix()(0, 2);
}

struct CompletenessReport {
  double completeness_residual = 0.0;   // max |sum J J^dag - 4 I|
  double orthogonality_residual = 0.0;  // max |tr(J^dag J') - c_J delta|
  bool passed = false;
};

inline double hs_norm_constant(GeneratorId id) { return subset_of(id) == Subset::J0 ? 1.0 : 2.0; }

inline CompletenessReport completeness_orthogonality(double tol = 1e-14) {
  CompletenessReport r;
  Matrix4c sum = Matrix4c::Zero();
  for (auto id : ALL_GENERATORS) {
    const Matrix4c j = fourdim_generator(id).matrix;
    sum += j * j.adjoint();
  }
  r.completeness_residual = max_abs4(sum - 4.0 * Matrix4c::Identity());
  for (auto a : ALL_GENERATORS) {
    for (auto b : ALL_GENERATORS) {
      const cplx t = (fourdim_generator(a).matrix.adjoint() * fourdim_generator(b).matrix).trace();
      const double expect = a == b ? hs_norm_constant(a) : 0.0;
      r.orthogonality_residual = std::max(r.orthogonality_residual, std::abs(t - expect));
    }
  }
  r.passed = r.completeness_residual <= tol && r.orthogonality_residual <= tol;
  return r;
}

/// 4D image of K without the scalar term.
inline Matrix4c rep_of(const CoefficientVector& c) {
  const auto v = c.to_array();
  Matrix4c m = Matrix4c::Zero();
  for (int k = 0; k < 7; ++k) m += v[k] * fourdim_generator(CONSERVING_GENERATORS[k]).matrix;
  return m;
}

struct Decomposition {
  CoefficientVector coefficients;
  double imaginary_residual = 0.0;  // max |Im c_J|
  double out_of_span = 0.0;         // Frobenius norm of the part outside span(J0, J+)
};

inline Decomposition decompose_fourdim(const Matrix4c& m) {
  std::array<double, 7> re{};
  Matrix4c inside = Matrix4c::Zero();
  Decomposition d;
  for (int k = 0; k < 7; ++k) {
    const FourDimRep j = fourdim_generator(CONSERVING_GENERATORS[k]);
    const cplx c = (j.matrix.adjoint() * m).trace() / hs_norm_constant(j.id);
    re[k] = c.real();
    d.imaginary_residual = std::max(d.imaginary_residual, std::abs(c.imag()));
    inside += c * j.matrix;
  }
  d.coefficients = CoefficientVector::from_array(re);
  d.out_of_span = (m - inside).norm();
  return d;
}

/// Max over i of the safe-subspace residual of [J, X_i] + sum_j J_ij X_j.
inline double sj_consistency_residual(GeneratorId id, int n) {
  const auto basic = basic_superoperators(n);
  const std::array<const SuperOperator*, 4> x = {&basic.A, &basic.At, &basic.A_dag, &basic.At_dag};
  const SparseMatrix j = generator(id, n).matrix();
  const Matrix4c rep = fourdim_generator(id).matrix;
  double out = 0.0;
  for (int i = 0; i < 4; ++i) {
    SparseMatrix d = commutator(j, x[i]->matrix());
    for (int k = 0; k < 4; ++k) {
      if (rep(i, k) != 0.0) d += rep(i, k) * x[k]->matrix();
    }
    out = std::max(out, safe_residual(d, n, n - 5));
  }
  return out;
}

}  // namespace oscsym

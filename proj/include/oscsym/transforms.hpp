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

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "oscsym/generators.hpp"
#include "oscsym/symplectic.hpp"

namespace oscsym {

inline constexpr double MAX_TRANSFORM_PARAMETER = 10.0;

/// exp(parameter * J) with J a probability-conserving generator.
class TransformStep {
 public:
  TransformStep(GeneratorId generator, double parameter) : generator_(generator), parameter_(parameter) {
    if (subset_of(generator) == Subset::Jminus) {
      throw PreconditionError("TransformStep: generators from the J- subset are not allowed");
    }
    if (!std::isfinite(parameter)) throw PreconditionError("TransformStep: parameter must be finite");
  }

  GeneratorId generator() const { return generator_; }
  double parameter() const { return parameter_; }
  TransformStep inverse() const { return {generator_, -parameter_}; }

 private:
  GeneratorId generator_;
  double parameter_;
};

/// Product S_1 S_2 ... S_k in operator order; S_k acts first.
class TransformSequence {
 public:
  TransformSequence() = default;
  TransformSequence(std::initializer_list<TransformStep> steps) : steps_(steps) {}
  explicit TransformSequence(std::vector<TransformStep> steps) : steps_(std::move(steps)) {}

  const std::vector<TransformStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }

  TransformSequence inverse() const {
    std::vector<TransformStep> out;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) out.push_back(it->inverse());
    return TransformSequence(std::move(out));
  }

  /// outer * inner: inner acts first.
  friend TransformSequence operator*(const TransformSequence& outer, const TransformSequence& inner) {
    std::vector<TransformStep> out = outer.steps_;
    out.insert(out.end(), inner.steps_.begin(), inner.steps_.end());
    return TransformSequence(std::move(out));
  }

 private:
  std::vector<TransformStep> steps_;
};

/// Closed-form coefficients of exp(aJ) K exp(-aJ).
inline CoefficientVector coefficient_map(const TransformStep& step, const CoefficientVector& c) {
  const double a = step.parameter();
  CoefficientVector o = c;
  switch (step.generator()) {
    case GeneratorId::iL0: {
      const double co = std::cos(a), si = std::sin(a);
      o.h1 = c.h1 * co + c.h2 * si;
      o.h2 = c.h2 * co - c.h1 * si;
      o.g1 = c.g1 * co + c.g2 * si;
      o.g2 = c.g2 * co - c.g1 * si;
      break;
    }
    case GeneratorId::iM1: {
      const double ch = std::cosh(a), sh = std::sinh(a);
      o.h0 = c.h0 * ch + c.h2 * sh;
      o.h2 = c.h2 * ch + c.h0 * sh;
      o.gp = c.gp * ch + c.g2 * sh;
      o.g2 = c.g2 * ch + c.gp * sh;
      break;
    }
    case GeneratorId::iM2: {
      const double ch = std::cosh(a), sh = std::sinh(a);
      o.h0 = c.h0 * ch - c.h1 * sh;
      o.h1 = c.h1 * ch - c.h0 * sh;
      o.gp = c.gp * ch - c.g1 * sh;
      o.g1 = c.g1 * ch - c.gp * sh;
      break;
    }
    case GeneratorId::O0: {
      const double e = std::exp(a);
      o.gp = c.gp * e;
      o.g1 = c.g1 * e;
      o.g2 = c.g2 * e;
      break;
    }
    case GeneratorId::Op:
      o.gp = c.gp - a * c.g0;
      o.g1 = c.g1 + a * c.h2;
      o.g2 = c.g2 - a * c.h1;
      break;
    case GeneratorId::L1p:
      o.gp = c.gp + a * c.h2;
      o.g1 = c.g1 - a * c.g0;
      o.g2 = c.g2 + a * c.h0;
      break;
    case GeneratorId::L2p:
      o.gp = c.gp - a * c.h1;
      o.g1 = c.g1 - a * c.h0;
      o.g2 = c.g2 - a * c.g0;
      break;
    default:
      throw PreconditionError("coefficient_map: generator not allowed");
  }
  return o;
}

inline CoefficientVector apply_sequence(const TransformSequence& seq, const CoefficientVector& c) {
  CoefficientVector out = c;
  const auto& s = seq.steps();
  for (auto it = s.rbegin(); it != s.rend(); ++it) out = coefficient_map(*it, out);
  return out;
}

/// -h0^2 + h1^2 + h2^2 and -gp^2 + g1^2 + g2^2.
inline std::pair<double, double> length_invariants(const CoefficientVector& c) {
  return {-c.h0 * c.h0 + c.h1 * c.h1 + c.h2 * c.h2, -c.gp * c.gp + c.g1 * c.g1 + c.g2 * c.g2};
}

namespace detail {

inline int step_padding(int order) { return 2 * (order + 1) + 2; }

inline void mask_above(SparseMatrix& m, Eigen::Index n, Eigen::Index top) {
  m.prune([&](Eigen::Index r, Eigen::Index c, const cplx&) {
    return level(r, n) <= top && level(c, n) <= top;
  });
}

// Keeps the block of Fock levels 0..n_to-1.
inline SparseMatrix crop(const SparseMatrix& m, Eigen::Index n_from, Eigen::Index n_to) {
  std::vector<Eigen::Triplet<cplx>> t;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      const Eigen::Index r = it.row(), c = it.col();
      if (r / n_from < n_to && r % n_from < n_to && c / n_from < n_to && c % n_from < n_to) {
        t.emplace_back((r / n_from) * n_to + r % n_from, (c / n_from) * n_to + c % n_from, it.value());
      }
    }
  }
  SparseMatrix out(n_to * n_to, n_to * n_to);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

struct PaddedStep {
  SparseMatrix generator;  // already at the working cutoff
  double parameter;
  int order;
};

// exp(aJ) K exp(-aJ) = sum_n a^n/n! ad_J^n K for nilpotent ad_J. Each
// commutator spoils two levels at the top of the truncated space, so the
// spoiled band is zeroed before it can feed back. Returns the new highest
// trustworthy level.
inline Eigen::Index hadamard_masked(const PaddedStep& s, SparseMatrix& k, Eigen::Index n_w, Eigen::Index top) {
  SparseMatrix out = k;
  SparseMatrix term = k;
  double coef = 1.0;
  Eigen::Index valid = top;
  for (int n = 1; n <= s.order; ++n) {
    term = commutator(s.generator, term);
    valid -= 2;
    if (valid < 0) throw NumericalError("similarity: padding exhausted");
    mask_above(term, n_w, valid);
    coef *= s.parameter / n;
    if (term.nonZeros() == 0) break;
    out += coef * term;
  }
  mask_above(out, n_w, valid);
  k = std::move(out);
  return valid;
}

// Applies steps innermost (last) first to K at cutoff n_w, then crops to n.
inline SparseMatrix conjugate_padded(const std::vector<PaddedStep>& steps, SparseMatrix k, int n_w, int n) {
  Eigen::Index top = n_w - 1;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) top = hadamard_masked(*it, k, n_w, top);
  if (top < n - 1) throw NumericalError("similarity: padding exhausted");
  return crop(k, n_w, n);
}

inline void check_parameters(const TransformSequence& seq) {
  for (const auto& s : seq.steps()) {
    if (std::abs(s.parameter()) > MAX_TRANSFORM_PARAMETER) {
      throw PreconditionError("similarity: |parameter| > 10 risks exponential overflow");
    }
  }
}

}  // namespace detail

/// Builds a Liouville matrix at the requested cutoff.
using LiouvilleBuilder = std::function<SparseMatrix(const GeneratorSet&)>;

/// Matrix M with S X_i S^-1 = sum_j M_ij X_j for X = (A, A~, A^dag, A~^dag).
inline Matrix4c basis_transform(const TransformSequence& seq) {
  Matrix4c m = Matrix4c::Identity();
  const auto& s = seq.steps();
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    const Matrix4c rep = fourdim_generator(it->generator()).matrix;
    m = m * matrix_exponential(CMatrix(-it->parameter() * rep));
  }
  return m;
}

/// Basic superoperators at cutoff n after conjugation by the sequence.
inline BasicSuperoperators transformed_basics(const TransformSequence& seq, int n) {
  const Matrix4c m = basis_transform(seq);
  const auto b = basic_superoperators(n);
  const std::array<const SuperOperator*, 4> x = {&b.A, &b.At, &b.A_dag, &b.At_dag};
  std::array<SuperOperator, 4> y = {SuperOperator::zero(n), SuperOperator::zero(n), SuperOperator::zero(n),
                                    SuperOperator::zero(n)};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (m(i, j) != 0.0) y[i] = y[i] + m(i, j) * *x[j];
    }
  }
  return {y[0], y[2], y[1], y[3]};
}

/// S K S^-1 at cutoff N. The builder runs on generators assembled from the
/// conjugated A, A~, A^dag, A~^dag two levels above N, so every
/// returned entry equals the untruncated transform.
inline SuperOperator superop_similarity(const TransformSequence& seq, const LiouvilleBuilder& build, int n) {
  detail::check_parameters(seq);
  const int n_w = std::max(n + 2, 6);
  const GeneratorSet g(transformed_basics(seq, n_w));
  return SuperOperator(n, detail::crop(build(g), n_w, n));
}

inline SuperOperator superop_similarity(const TransformSequence& seq, const CoefficientVector& c, int n) {
  return superop_similarity(seq, [&](const GeneratorSet& g) { return build_K(c, g).matrix(); }, n);
}

/// Dense S = exp(a_1 J_1) ... exp(a_k J_k) from the truncated generators.
inline SuperOperator transformation_operator(const TransformSequence& seq, int n) {
  detail::check_parameters(seq);
  const GeneratorSet g(n);
  CMatrix s = CMatrix::Identity(n * n, n * n);
  for (const auto& st : seq.steps()) s = s * matrix_exponential(st.parameter() * g[st.generator()].dense());
  return SuperOperator::from_dense(n, s);
}

struct GibbsState {
  DensityMatrix state;
  double q = 0.0;              // ratio of consecutive populations
  double normalization = 0.0;  // trace of exp(aO0)|0><0| before renormalizing
  bool truncation_warning = false;
};

/// exp(a O0) |0><0|, renormalized. O0 keeps the diagonal sector invariant and
/// acts there as a tridiagonal matrix, exponentiated with headroom levels.
inline GibbsState gibbs_from_vacuum(double alpha, int n) {
  detail::require(alpha >= 0.0 && std::isfinite(alpha), "gibbs_from_vacuum: alpha must be >= 0");
  detail::require(n >= 4, "gibbs_from_vacuum: cutoff must be at least 4");
  const double q = std::tanh(alpha / 2.0);
  int n_w = n + 40;
  while (n_w < 4000 && std::pow(q, n_w - n) > 1e-17) n_w *= 2;
  CMatrix m = CMatrix::Zero(n_w, n_w);
  for (int k = 0; k + 1 < n_w; ++k) {
    m(k + 1, k) = 0.5 * (k + 1);
    m(k, k + 1) = -0.5 * (k + 1);
  }
  const CVector p = matrix_exponential(alpha * m).col(0);
  CMatrix rho = CMatrix::Zero(n, n);
  double tr = 0.0;
  for (int k = 0; k < n; ++k) {
    rho(k, k) = p(k).real();
    tr += p(k).real();
  }
  GibbsState out{DensityMatrix(rho / tr), q, 0.0, std::pow(q, n) > 1e-12};
  double full = 0.0;
  for (int k = 0; k < n_w; ++k) full += p(k).real();
  out.normalization = full;
  return out;
}

struct Displacement {
  SuperOperator D1;  // exp(z A^dag + z* A~^dag)
  SuperOperator D2;  // exp(y A + y* A~)
  SuperOperator D;   // exp(-|z|^2) D1(z) D2(-z*), unitary
  double normalization = 1.0;  // exp(|z|^2), removed from D
};

inline Displacement displacement_superops(cplx z, cplx y, int n) {
  detail::require(std::abs(z) <= 2.0 && std::abs(y) <= 2.0, "displacement_superops: |z|, |y| must be <= 2");
  const auto b = basic_superoperators(n);
  auto expo = [&](const SuperOperator& gen) { return matrix_exponential(gen.dense()); };
  const CMatrix d1 = expo(z * b.A_dag + std::conj(z) * b.At_dag);
  const CMatrix d2 = expo(y * b.A + std::conj(y) * b.At);
  const CMatrix d2z = expo(-std::conj(z) * b.A - z * b.At);
  const double norm = std::exp(std::norm(z));
  return {SuperOperator::from_dense(n, d1), SuperOperator::from_dense(n, d2),
          SuperOperator::from_dense(n, (d1 * d2z) / norm), norm};
}

namespace detail {

inline int linear_padding() { return step_padding(4); }

// D1(z) K D1(z)^-1 style steps for generators linear in A, A~.
inline SparseMatrix displace_padded(const std::vector<std::pair<cplx, cplx>>& raise_lower, const LiouvilleBuilder& build,
                                    int n) {
  const int n_w = n + static_cast<int>(raise_lower.size()) * linear_padding();
  const GeneratorSet g(n_w);
  const auto b = basic_superoperators(n_w);
  std::vector<PaddedStep> steps;
  for (const auto& [w, y] : raise_lower) {
    SparseMatrix gen = (w * b.A_dag + std::conj(w) * b.At_dag + y * b.A + std::conj(y) * b.At).matrix();
    steps.push_back({std::move(gen), 1.0, 4});
  }
  return conjugate_padded(steps, build(g), n_w, n);
}

}  // namespace detail

/// D1(z) K D1(z)^-1.
inline SuperOperator similarity_by_D1(cplx z, const LiouvilleBuilder& build, int n) {
  return SuperOperator(n, detail::displace_padded({{z, 0.0}}, build, n));
}

/// D(z) K D(z)^-1 with D(z) = D1(z) D2(-z*).
inline SuperOperator similarity_by_D(cplx z, const LiouvilleBuilder& build, int n) {
  return SuperOperator(n, detail::displace_padded({{z, 0.0}, {0.0, -std::conj(z)}}, build, n));
}

/// h0 iL0 + g0 (O0 - I/2 - O+) + h1 (iM1 - L2+) + h2 (iM2 + L1+).
inline CoefficientVector vacuum_annihilating_K(double h0, double g0, double h1, double h2) {
  return {h0, h1, h2, g0, -g0, h2, -h1};
}

inline bool is_vacuum_annihilating_form(const CoefficientVector& c, double tol = 1e-12) {
  return std::abs(c.gp + c.g0) <= tol && std::abs(c.g1 - c.h2) <= tol && std::abs(c.g2 + c.h1) <= tol;
}

/// |z><z| truncated to N levels (not renormalized).
inline CMatrix coherent_state(cplx z, int n) {
  CVector psi(n);
  cplx amp = std::exp(-0.5 * std::norm(z));
  for (int k = 0; k < n; ++k) {
    psi(k) = amp;
    amp *= z / std::sqrt(static_cast<double>(k + 1));
  }
  return psi * psi.adjoint();
}

struct DisplacedVacuum {
  SuperOperator generator;  // D K_V D^-1
  SuperOperator expected;   // K_V + X + X~
  double decomposition_residual = 0.0;
  double stationarity_residual = 0.0;  // |(D K_V D^-1) vec|z><z||
};

inline DisplacedVacuum displaced_vacuum_generator(const CoefficientVector& c, cplx z, int n) {
  detail::require(is_vacuum_annihilating_form(c), "displaced_vacuum_generator: c is not of vacuum-annihilating form");
  SuperOperator k = similarity_by_D(z, [&](const GeneratorSet& g) { return build_K(c, g).matrix(); }, n);
  const auto b = basic_superoperators(n);
  const cplx w = 0.5 * (z * cplx(c.g0, c.h0) + std::conj(z) * cplx(c.h2, c.h1));
  const SuperOperator x = w * (b.At - b.A_dag);
  SuperOperator expected = build_K(c, n) + x + superop_associate(x);
  const double dec = safe_residual(k, expected);
  const CVector r = k.matrix() * vectorize(coherent_state(z, n));
  const double stat = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  return {std::move(k), std::move(expected), dec, stat};
}

struct FrequencyDiagonalization {
  double omega0_prime;
  double phi;  // exp(phi iM2) removes h1
};

inline FrequencyDiagonalization diagonalize_frequency(double h0, double h1) {
  if (!(std::abs(h1) < std::abs(h0))) {
    throw PreconditionError("diagonalize_frequency: requires |h1| < |h0|");
  }
  const double w0 = h0 / 2.0;
  return {std::copysign(std::sqrt(w0 * w0 - h1 * h1 / 4.0), w0), std::atanh(h1 / h0)};
}

}  // namespace oscsym

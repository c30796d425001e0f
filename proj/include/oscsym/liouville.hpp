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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oscsym {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr cplx I_UNIT{0.0, 1.0};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

inline void require_same_dim(int a, int b, const char* where) {
  if (a != b) {
    throw DimensionError(std::string(where) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// Flat index of |m><n| is m*N+n; the swap sends it to n*N+m.
inline Eigen::Index swap_index(Eigen::Index k, Eigen::Index n) {
  return (k % n) * n + k / n;
}

// Fock level of a flat Liouville index: the larger of bra and ket occupation.
inline Eigen::Index level(Eigen::Index k, Eigen::Index n) {
  return std::max(k / n, k % n);
}

inline double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      out = std::max(out, std::abs(it.value()));
    }
  }
  return out;
}

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Operator on the truncated oscillator space with levels 0..N-1.
class FockOperator {
 public:
  explicit FockOperator(CMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw DimensionError("FockOperator: matrix must be square and non-empty");
    }
  }

  static FockOperator identity(int n) {
    return FockOperator(CMatrix::Identity(n, n));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  FockOperator adjoint() const { return FockOperator(m_.adjoint()); }

  friend FockOperator operator*(const FockOperator& x, const FockOperator& y) {
    detail::require_same_dim(x.dim(), y.dim(), "FockOperator product");
    return FockOperator(x.m_ * y.m_);
  }
  friend FockOperator operator+(const FockOperator& x, const FockOperator& y) {
    detail::require_same_dim(x.dim(), y.dim(), "FockOperator sum");
    return FockOperator(x.m_ + y.m_);
  }
  friend FockOperator operator-(const FockOperator& x, const FockOperator& y) {
    detail::require_same_dim(x.dim(), y.dim(), "FockOperator difference");
    return FockOperator(x.m_ - y.m_);
  }
  friend FockOperator operator*(cplx c, const FockOperator& x) {
    return FockOperator(c * x.m_);
  }

 private:
  CMatrix m_;
};

/// Raw lowering matrix, entries (n, n+1) = sqrt(n+1). Accepts any N >= 1.
inline CMatrix annihilation_matrix(int n) {
  detail::require(n >= 1, "annihilation_matrix: N must be positive");
  CMatrix a = CMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  return a;
}

inline FockOperator annihilation_operator(int n) {
  detail::require(n >= 4, "annihilation_operator: cutoff must be at least 4");
  return FockOperator(annihilation_matrix(n));
}

inline FockOperator creation_operator(int n) {
  return annihilation_operator(n).adjoint();
}

inline FockOperator number_operator(int n) {
  CMatrix d = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) d(k, k) = static_cast<double>(k);
  return FockOperator(d);
}

/// Fock-basis matrix unit |m><n|.
inline CMatrix ket_bra(int n, int m, int k) {
  CMatrix e = CMatrix::Zero(n, n);
  e(m, k) = 1.0;
  return e;
}

/// Row-major vectorization: |m><n| maps to index m*N+n.
inline CVector vectorize(const CMatrix& rho) {
  const Eigen::Index n = rho.rows();
  CVector v(n * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) v(m * n + k) = rho(m, k);
  }
  return v;
}

inline CMatrix unvectorize(const CVector& v, int n) {
  detail::require_same_dim(static_cast<int>(v.size()), n * n, "unvectorize");
  CMatrix rho(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) rho(m, k) = v(m * n + k);
  }
  return rho;
}

/// One term x1 (.) x2 of a factorized superoperator.
struct FactorPair {
  FockOperator left;
  FockOperator right;
};

/// Linear map on operators, stored as its N^2 x N^2 Liouville matrix.
/// Optionally records a decomposition sum_i x1_i (.) x2_i.
class SuperOperator {
 public:
  SuperOperator(int dim, SparseMatrix matrix) : dim_(dim), m_(std::move(matrix)) {
    check_shape();
  }

  SuperOperator(int dim, SparseMatrix matrix, std::vector<FactorPair> factors)
      : dim_(dim), m_(std::move(matrix)), factors_(std::move(factors)) {
    check_shape();
    for (const auto& f : *factors_) {
      detail::require_same_dim(f.left.dim(), dim_, "SuperOperator factor");
      detail::require_same_dim(f.right.dim(), dim_, "SuperOperator factor");
    }
  }

  static SuperOperator from_dense(int dim, const CMatrix& m) {
    return SuperOperator(dim, m.sparseView(1.0, 0.0));
  }

  static SuperOperator identity(int n) {
    SparseMatrix id(n * n, n * n);
    id.setIdentity();
    return SuperOperator(n, std::move(id),
                         {FactorPair{FockOperator::identity(n), FockOperator::identity(n)}});
  }

  static SuperOperator zero(int n) {
    return SuperOperator(n, SparseMatrix(n * n, n * n), std::vector<FactorPair>{});
  }

  int dim() const { return dim_; }
  Eigen::Index liouville_dim() const { return m_.rows(); }
  const SparseMatrix& matrix() const { return m_; }
  CMatrix dense() const { return CMatrix(m_); }

  bool has_factors() const { return factors_.has_value(); }
  const std::vector<FactorPair>& factors() const {
    if (!factors_) throw PreconditionError("SuperOperator: no factor decomposition recorded");
    return *factors_;
  }
  const std::optional<std::vector<FactorPair>>& maybe_factors() const { return factors_; }

  SuperOperator without_factors() const { return SuperOperator(dim_, m_); }

  friend SuperOperator operator+(const SuperOperator& x, const SuperOperator& y) {
    detail::require_same_dim(x.dim_, y.dim_, "superoperator sum");
    SparseMatrix m = x.m_ + y.m_;
    if (x.factors_ && y.factors_) {
      auto f = *x.factors_;
      f.insert(f.end(), y.factors_->begin(), y.factors_->end());
      return SuperOperator(x.dim_, std::move(m), std::move(f));
    }
    return SuperOperator(x.dim_, std::move(m));
  }

  friend SuperOperator operator*(cplx c, const SuperOperator& x) {
    SparseMatrix m = c * x.m_;
    if (x.factors_) {
      std::vector<FactorPair> f;
      f.reserve(x.factors_->size());
      for (const auto& p : *x.factors_) f.push_back({c * p.left, p.right});
      return SuperOperator(x.dim_, std::move(m), std::move(f));
    }
    return SuperOperator(x.dim_, std::move(m));
  }
  friend SuperOperator operator*(double c, const SuperOperator& x) { return cplx(c, 0.0) * x; }

  friend SuperOperator operator-(const SuperOperator& x) { return -1.0 * x; }
  friend SuperOperator operator-(const SuperOperator& x, const SuperOperator& y) { return x + (-y); }

  // XY = x1 y1 (.) y2 x2 at the factor level.
  friend SuperOperator operator*(const SuperOperator& x, const SuperOperator& y) {
    detail::require_same_dim(x.dim_, y.dim_, "superoperator product");
    SparseMatrix m = (x.m_ * y.m_).pruned();
    if (x.factors_ && y.factors_) {
      std::vector<FactorPair> f;
      f.reserve(x.factors_->size() * y.factors_->size());
      for (const auto& px : *x.factors_) {
        for (const auto& py : *y.factors_) {
          f.push_back({px.left * py.left, py.right * px.right});
        }
      }
      return SuperOperator(x.dim_, std::move(m), std::move(f));
    }
    return SuperOperator(x.dim_, std::move(m));
  }

 private:
  void check_shape() const {
    if (dim_ < 1 || m_.rows() != static_cast<Eigen::Index>(dim_) * dim_ || m_.cols() != m_.rows()) {
      throw DimensionError("SuperOperator: matrix must be N^2 x N^2");
    }
  }

  int dim_;
  SparseMatrix m_;
  std::optional<std::vector<FactorPair>> factors_;
};

namespace detail {

// x1 kron x2^T without storing structural zeros.
inline SparseMatrix kron_transpose(const CMatrix& x1, const CMatrix& x2) {
  const Eigen::Index n = x1.rows();
  std::vector<Eigen::Triplet<cplx>> t;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx u = x1(i, j);
      if (u == 0.0) continue;
      for (Eigen::Index l = 0; l < n; ++l) {
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx v = x2(l, k);
          if (v != 0.0) t.emplace_back(i * n + k, j * n + l, u * v);
        }
      }
    }
  }
  SparseMatrix m(n * n, n * n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace detail

inline SuperOperator make_superoperator(const FockOperator& x1, const FockOperator& x2) {
  detail::require_same_dim(x1.dim(), x2.dim(), "make_superoperator");
  return SuperOperator(x1.dim(), detail::kron_transpose(x1.matrix(), x2.matrix()),
                       {FactorPair{x1, x2}});
}

/// Liouville matrix rebuilt from a factor list.
inline SparseMatrix matrix_from_factors(int dim, const std::vector<FactorPair>& factors) {
  SparseMatrix m(dim * dim, dim * dim);
  for (const auto& f : factors) m += detail::kron_transpose(f.left.matrix(), f.right.matrix());
  return m;
}

inline SuperOperator superop_multiply(const SuperOperator& x, const SuperOperator& y) { return x * y; }

// Pi X^T Pi at the matrix level, x2 (.) x1 at the factor level.
inline SuperOperator superop_transpose(const SuperOperator& x) {
  const Eigen::Index n = x.dim();
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(x.matrix().nonZeros());
  for (Eigen::Index k = 0; k < x.matrix().outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(x.matrix(), k); it; ++it) {
      t.emplace_back(detail::swap_index(it.col(), n), detail::swap_index(it.row(), n), it.value());
    }
  }
  SparseMatrix m(x.liouville_dim(), x.liouville_dim());
  m.setFromTriplets(t.begin(), t.end());
  if (x.has_factors()) {
    std::vector<FactorPair> f;
    for (const auto& p : x.factors()) f.push_back({p.right, p.left});
    return SuperOperator(x.dim(), std::move(m), std::move(f));
  }
  return SuperOperator(x.dim(), std::move(m));
}

inline SuperOperator superop_adjoint(const SuperOperator& x) {
  SparseMatrix m = x.matrix().adjoint();
  if (x.has_factors()) {
    std::vector<FactorPair> f;
    for (const auto& p : x.factors()) f.push_back({p.left.adjoint(), p.right.adjoint()});
    return SuperOperator(x.dim(), std::move(m), std::move(f));
  }
  return SuperOperator(x.dim(), std::move(m));
}

// Pi conj(X) Pi at the matrix level, x2^dag (.) x1^dag at the factor level.
inline SuperOperator superop_associate(const SuperOperator& x) {
  const Eigen::Index n = x.dim();
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(x.matrix().nonZeros());
  for (Eigen::Index k = 0; k < x.matrix().outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(x.matrix(), k); it; ++it) {
      t.emplace_back(detail::swap_index(it.row(), n), detail::swap_index(it.col(), n),
                     std::conj(it.value()));
    }
  }
  SparseMatrix m(x.liouville_dim(), x.liouville_dim());
  m.setFromTriplets(t.begin(), t.end());
  if (x.has_factors()) {
    std::vector<FactorPair> f;
    for (const auto& p : x.factors()) f.push_back({p.right.adjoint(), p.left.adjoint()});
    return SuperOperator(x.dim(), std::move(m), std::move(f));
  }
  return SuperOperator(x.dim(), std::move(m));
}

/// Absolute max-entry deviation of X from its associate.
inline double adjoint_symmetry_residual(const SuperOperator& x) {
  return detail::max_abs(SparseMatrix(superop_associate(x).matrix() - x.matrix()));
}

/// X~ = X up to tol, measured relative to max(1, max|X|).
inline bool is_adjoint_symmetric(const SuperOperator& x, double tol) {
  const double scale = std::max(1.0, detail::max_abs(x.matrix()));
  return adjoint_symmetry_residual(x) <= tol * scale;
}

/// X rho via the Liouville matrix.
inline CMatrix apply(const SuperOperator& x, const CMatrix& rho) {
  detail::require_same_dim(static_cast<int>(rho.rows()), x.dim(), "apply");
  return unvectorize(x.matrix() * vectorize(rho), x.dim());
}

/// X rho via the recorded factors, sum_i x1_i rho x2_i.
inline CMatrix apply_factors(const SuperOperator& x, const CMatrix& rho) {
  detail::require_same_dim(static_cast<int>(rho.rows()), x.dim(), "apply_factors");
  CMatrix out = CMatrix::Zero(x.dim(), x.dim());
  for (const auto& f : x.factors()) out += f.left.matrix() * rho * f.right.matrix();
  return out;
}

/// Density operator on the truncated space. Invariants are checked on request
/// since truncated evolutions may break positivity by design.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw DimensionError("DensityMatrix: matrix must be square and non-empty");
    }
  }

  static DensityMatrix fock(int n, int level) {
    detail::require(level >= 0 && level < n, "DensityMatrix::fock: level outside cutoff");
    return DensityMatrix(ket_bra(n, level, level));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  cplx trace() const { return m_.trace(); }

  double hermiticity_residual() const { return detail::max_abs(CMatrix(m_ - m_.adjoint())); }

  double min_eigenvalue() const {
    const CMatrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  double purity() const { return (m_ * m_).trace().real(); }

  bool is_valid(double tol) const {
    return hermiticity_residual() <= tol && std::abs(trace() - 1.0) <= tol && min_eigenvalue() >= -tol;
  }

 private:
  CMatrix m_;
};

/// Checked constructor: hermitian, unit trace, positive up to tol.
inline DensityMatrix make_density_matrix(CMatrix entries, double tol = 1e-10) {
  DensityMatrix rho(std::move(entries));
  if (!rho.is_valid(tol)) throw PreconditionError("make_density_matrix: not a density operator");
  return rho;
}

/// B B^dag / tr with B supported on levels 0..support-1.
inline DensityMatrix random_density(int n, int support, std::mt19937_64& rng) {
  detail::require(support >= 1 && support <= n, "random_density: support outside cutoff");
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix b = CMatrix::Zero(n, n);
  for (int i = 0; i < support; ++i) {
    for (int j = 0; j < support; ++j) b(i, j) = cplx(g(rng), g(rng));
  }
  CMatrix rho = b * b.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho);
}

inline cplx trace_pair(const SuperOperator& x, const DensityMatrix& rho) {
  detail::require_same_dim(rho.dim(), x.dim(), "trace_pair");
  const CVector v = x.matrix() * vectorize(rho.matrix());
  cplx tr = 0.0;
  for (int m = 0; m < x.dim(); ++m) tr += v(m * x.dim() + m);
  return tr;
}

inline CMatrix matrix_exponential(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_exponential: matrix must be square");
  if (!m.allFinite()) throw PreconditionError("matrix_exponential: non-finite entries");
  return m.exp();
}

/// Max |X_rc| over entries whose bra and ket levels are all <= max_level.
inline double safe_residual(const SparseMatrix& delta, int n, int max_level) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < delta.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(delta, k); it; ++it) {
      if (detail::level(it.row(), n) <= max_level && detail::level(it.col(), n) <= max_level) {
        out = std::max(out, std::abs(it.value()));
      }
    }
  }
  return out;
}

inline double safe_residual(const SuperOperator& x, const SuperOperator& y, int margin = 5) {
  detail::require_same_dim(x.dim(), y.dim(), "safe_residual");
  return safe_residual(SparseMatrix(x.matrix() - y.matrix()), x.dim(), x.dim() - margin);
}

}  // namespace oscsym

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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oscsym/liouville.hpp"

namespace oscsym {

enum class GeneratorId { iL0, iM1, iM2, O0, Op, L1p, L2p, Om, L1m, L2m };

enum class Subset { J0, Jplus, Jminus };

inline constexpr std::array<GeneratorId, 10> ALL_GENERATORS = {
    GeneratorId::iL0, GeneratorId::iM1, GeneratorId::iM2, GeneratorId::O0, GeneratorId::Op,
    GeneratorId::L1p, GeneratorId::L2p, GeneratorId::Om,  GeneratorId::L1m, GeneratorId::L2m};

// Order matches the coefficient vector (h0, h1, h2, g0, gp, g1, g2).
inline constexpr std::array<GeneratorId, 7> CONSERVING_GENERATORS = {
    GeneratorId::iL0, GeneratorId::iM1, GeneratorId::iM2, GeneratorId::O0,
    GeneratorId::Op,  GeneratorId::L1p, GeneratorId::L2p};

inline constexpr int index_of(GeneratorId id) { return static_cast<int>(id); }

inline constexpr Subset subset_of(GeneratorId id) {
  switch (id) {
    case GeneratorId::iL0:
    case GeneratorId::iM1:
    case GeneratorId::iM2:
    case GeneratorId::O0:
      return Subset::J0;
    case GeneratorId::Op:
    case GeneratorId::L1p:
    case GeneratorId::L2p:
      return Subset::Jplus;
    default:
      return Subset::Jminus;
  }
}

inline constexpr std::string_view name_of(GeneratorId id) {
  constexpr std::array<std::string_view, 10> names = {"iL0", "iM1", "iM2", "O0",  "O+",
                                                      "L1+", "L2+", "O-",  "L1-", "L2-"};
  return names[index_of(id)];
}

inline std::optional<GeneratorId> generator_from_name(std::string_view s) {
  for (auto id : ALL_GENERATORS) {
    if (name_of(id) == s) return id;
  }
  return std::nullopt;
}

/// Coefficients of K = h0 iL0 + h1 iM1 + h2 iM2 + g0 (O0 - I/2) + gp O+ + g1 L1+ + g2 L2+.
struct CoefficientVector {
  double h0 = 0, h1 = 0, h2 = 0, g0 = 0, gp = 0, g1 = 0, g2 = 0;

  std::array<double, 7> to_array() const { return {h0, h1, h2, g0, gp, g1, g2}; }

  static CoefficientVector from_array(const std::array<double, 7>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
  }

  bool is_finite() const {
    for (double v : to_array()) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  double operator[](int k) const { return to_array()[k]; }
};

inline double max_difference(const CoefficientVector& x, const CoefficientVector& y) {
  const auto a = x.to_array();
  const auto b = y.to_array();
  double out = 0.0;
  for (int k = 0; k < 7; ++k) out = std::max(out, std::abs(a[k] - b[k]));
  return out;
}

struct BasicSuperoperators {
  SuperOperator A;       // a x 1
  SuperOperator A_dag;   // a^dag x 1
  SuperOperator At;      // 1 x a^dag
  SuperOperator At_dag;  // 1 x a
};

inline BasicSuperoperators basic_superoperators(int n) {
  const FockOperator a = annihilation_operator(n);
  const FockOperator ad = a.adjoint();
  const FockOperator one = FockOperator::identity(n);
  return {make_superoperator(a, one), make_superoperator(ad, one), make_superoperator(one, ad),
          make_superoperator(one, a)};
}

/// Generator written in terms of the given basic superoperators. Substituting
/// transformed basics gives the transformed generator.
inline SuperOperator generator(GeneratorId id, const BasicSuperoperators& basic) {
  const auto& [A, Ad, At, Atd] = basic;
  const SuperOperator one = SuperOperator::identity(A.dim());
  const cplx i = I_UNIT;
  switch (id) {
    case GeneratorId::iL0:
      return (0.5 * i) * (Ad * A - Atd * At);
    case GeneratorId::O0:
      return 0.5 * (Ad * Atd - A * At);
    case GeneratorId::iM1:
      return (0.25 * i) * (Ad * Ad + A * A - Atd * Atd - At * At);
    case GeneratorId::iM2:
      return 0.25 * (Ad * Ad - A * A + Atd * Atd - At * At);
    case GeneratorId::Op:
      return 0.5 * (Ad * Atd + A * At - Ad * A - Atd * At - one);
    case GeneratorId::Om:
      return 0.5 * (Ad * Atd + A * At + Ad * A + Atd * At + one);
    case GeneratorId::L1p:
      return 0.25 * (2.0 * (Ad * At) + 2.0 * (A * Atd) - (Ad * Ad + A * A + Atd * Atd + At * At));
    case GeneratorId::L1m:
      return 0.25 * (2.0 * (Ad * At) + 2.0 * (A * Atd) + (Ad * Ad + A * A + Atd * Atd + At * At));
    case GeneratorId::L2p:
      return (-0.25 * i) *
             (2.0 * (Ad * At) - 2.0 * (A * Atd) - Ad * Ad + A * A + Atd * Atd - At * At);
    case GeneratorId::L2m:
      return (-0.25 * i) *
             (2.0 * (Ad * At) - 2.0 * (A * Atd) + Ad * Ad - A * A - Atd * Atd + At * At);
  }
  throw PreconditionError("generator: unknown id");
}

inline SuperOperator generator(GeneratorId id, int n) {
  detail::require(n >= 6, "generator: cutoff must be at least 6");
  return generator(id, basic_superoperators(n));
}

/// All ten generators at one cutoff, built once.
class GeneratorSet {
 public:
  explicit GeneratorSet(int n) : GeneratorSet((detail::require(n >= 6, "generator: cutoff must be at least 6"),
                                                basic_superoperators(n))) {}

  explicit GeneratorSet(const BasicSuperoperators& basic)
      : dim_(basic.A.dim()),
        identity_(SuperOperator::identity(basic.A.dim())),
        unit_(0.5 * (basic.A * basic.A_dag - basic.A_dag * basic.A + basic.At * basic.At_dag -
                     basic.At_dag * basic.At)) {
    gens_.reserve(ALL_GENERATORS.size());
    for (auto id : ALL_GENERATORS) gens_.push_back(generator(id, basic));
  }

  int dim() const { return dim_; }
  const SuperOperator& operator[](GeneratorId id) const { return gens_[index_of(id)]; }
  const SuperOperator& identity() const { return identity_; }
  // rho -> {[a,a^dag], rho}/2. Equal to the identity below the top level.
  const SuperOperator& unit() const { return unit_; }

 private:
  int dim_;
  std::vector<SuperOperator> gens_;
  SuperOperator identity_;
  SuperOperator unit_;
};

inline SuperOperator commutator(const SuperOperator& x, const SuperOperator& y) {
  detail::require_same_dim(x.dim(), y.dim(), "commutator");
  return x * y - y * x;
}

inline SparseMatrix commutator(const SparseMatrix& x, const SparseMatrix& y) {
  return SparseMatrix(x * y - y * x);
}

inline SuperOperator build_K(const CoefficientVector& c, const GeneratorSet& g) {
  detail::require(c.is_finite(), "build_K: coefficients must be finite");
  SuperOperator k = c.h0 * g[GeneratorId::iL0];
  k = k + c.h1 * g[GeneratorId::iM1];
  k = k + c.h2 * g[GeneratorId::iM2];
  k = k + c.g0 * (g[GeneratorId::O0] - 0.5 * g.identity());
  k = k + c.gp * g[GeneratorId::Op];
  k = k + c.g1 * g[GeneratorId::L1p];
  k = k + c.g2 * g[GeneratorId::L2p];
  // The constants carried by O0 - I/2 and O+ are swapped for unit() so the
  // truncated generator annihilates the trace exactly.
  k = k - (0.5 * (c.g0 + c.gp)) * (g.unit() - g.identity());
  return k;
}

inline SuperOperator build_K(const CoefficientVector& c, int n) { return build_K(c, GeneratorSet(n)); }

/// Entry [J, J'] = coefficient * target of the commutation table.
struct TableEntry {
  int coefficient = 0;
  GeneratorId target = GeneratorId::iL0;
};

inline const std::array<std::array<TableEntry, 10>, 10>& commutation_table() {
  using G = GeneratorId;
  constexpr TableEntry z{};
  static const std::array<std::array<TableEntry, 10>, 10> table = {{
      {{z, {-1, G::iM2}, {1, G::iM1}, z, z, {-1, G::L2p}, {1, G::L1p}, z, {-1, G::L2m}, {1, G::L1m}}},
      {{{1, G::iM2}, z, {1, G::iL0}, z, {1, G::L2p}, z, {1, G::Op}, {1, G::L2m}, z, {1, G::Om}}},
      {{{-1, G::iM1}, {-1, G::iL0}, z, z, {-1, G::L1p}, {-1, G::Op}, z, {-1, G::L1m}, {-1, G::Om}, z}},
      {{z, z, z, z, {1, G::Op}, {1, G::L1p}, {1, G::L2p}, {-1, G::Om}, {-1, G::L1m}, {-1, G::L2m}}},
      {{z, {-1, G::L2p}, {1, G::L1p}, {-1, G::Op}, z, z, z, {-2, G::O0}, {-2, G::iM2}, {2, G::iM1}}},
      {{{1, G::L2p}, z, {1, G::Op}, {-1, G::L1p}, z, z, z, {2, G::iM2}, {2, G::O0}, {2, G::iL0}}},
      {{{-1, G::L1p}, {-1, G::Op}, z, {-1, G::L2p}, z, z, z, {-2, G::iM1}, {-2, G::iL0}, {2, G::O0}}},
      {{z, {-1, G::L2m}, {1, G::L1m}, {1, G::Om}, {2, G::O0}, {-2, G::iM2}, {2, G::iM1}, z, z, z}},
      {{{1, G::L2m}, z, {1, G::Om}, {1, G::L1m}, {2, G::iM2}, {-2, G::O0}, {2, G::iL0}, z, z, z}},
      {{{-1, G::L1m}, {-1, G::Om}, z, {1, G::L2m}, {-2, G::iM1}, {-2, G::iL0}, {-2, G::O0}, z, z, z}},
  }};
  return table;
}

inline TableEntry table_entry(GeneratorId j, GeneratorId jp) {
  return commutation_table()[index_of(j)][index_of(jp)];
}

/// Human-readable right-hand side, e.g. "-2iM2" or "0".
inline std::string table_rhs(GeneratorId j, GeneratorId jp) {
  const TableEntry e = table_entry(j, jp);
  if (e.coefficient == 0) return "0";
  std::string s = e.coefficient < 0 ? "-" : "";
  if (std::abs(e.coefficient) != 1) s += std::to_string(std::abs(e.coefficient));
  return s + std::string(name_of(e.target));
}

inline std::string pair_label(GeneratorId j, GeneratorId jp) {
  return "commutator[" + std::string(name_of(j)) + "," + std::string(name_of(jp)) + "]=" +
         table_rhs(j, jp);
}

struct PairCheck {
  GeneratorId left;
  GeneratorId right;
  std::string label;
  double residual = 0.0;
  bool pass = false;
};

struct CommutationReport {
  std::vector<PairCheck> pairs;
  double max_residual = 0.0;
  bool structure_ok = false;  // subset closure read off the table
  bool antisymmetric = false; // table entry (J', J) = -(J, J')
  bool passed = false;
  std::vector<std::string> failures;
};

namespace detail {

inline bool table_structure_ok() {
  for (auto j : ALL_GENERATORS) {
    for (auto jp : ALL_GENERATORS) {
      const TableEntry e = table_entry(j, jp);
      const Subset a = subset_of(j), b = subset_of(jp);
      if (j == GeneratorId::O0) {
        // [O0, J0] = 0 and [O0, J] = +-J on the J+- spaces.
        if (b == Subset::J0 && e.coefficient != 0) return false;
        if (b == Subset::Jplus && !(e.coefficient == 1 && e.target == jp)) return false;
        if (b == Subset::Jminus && !(e.coefficient == -1 && e.target == jp)) return false;
      }
      if (e.coefficient == 0) continue;
      const Subset t = subset_of(e.target);
      if (a == Subset::J0 && b == Subset::J0 && t != Subset::J0) return false;
      if (a == Subset::J0 && b != Subset::J0 && t != b) return false;
      if (a != Subset::J0 && b == Subset::J0 && t != a) return false;
      if (a != Subset::J0 && b != Subset::J0 && (a == b || t != Subset::J0)) return false;
    }
    for (auto jp : ALL_GENERATORS) {
      const Subset a = subset_of(j), b = subset_of(jp);
      if (a != Subset::J0 && a == b && table_entry(j, jp).coefficient != 0) return false;
    }
  }
  return true;
}

inline bool table_antisymmetric() {
  for (auto j : ALL_GENERATORS) {
    for (auto jp : ALL_GENERATORS) {
      const TableEntry e = table_entry(j, jp), f = table_entry(jp, j);
      if (e.coefficient != -f.coefficient) return false;
      if (e.coefficient != 0 && e.target != f.target) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Right-hand side of the table as a superoperator at this cutoff.
inline SparseMatrix table_rhs_matrix(GeneratorId j, GeneratorId jp, const GeneratorSet& g) {
  const TableEntry e = table_entry(j, jp);
  const Eigen::Index d = g[j].liouville_dim();
  if (e.coefficient == 0) return SparseMatrix(d, d);
  return SparseMatrix(static_cast<double>(e.coefficient) * g[e.target].matrix());
}

inline CommutationReport verify_commutation_table(int n, double tol) {
  detail::require(n >= 8, "verify_commutation_table: cutoff must be at least 8");
  const GeneratorSet g(n);
  CommutationReport r;
  r.structure_ok = detail::table_structure_ok();
  r.antisymmetric = detail::table_antisymmetric();
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      const GeneratorId a = ALL_GENERATORS[i], b = ALL_GENERATORS[j];
      const SparseMatrix c = commutator(g[a].matrix(), g[b].matrix());
      const double res = safe_residual(SparseMatrix(c - table_rhs_matrix(a, b, g)), n, n - 5);
      PairCheck p{a, b, pair_label(a, b), res, res <= tol};
      r.max_residual = std::max(r.max_residual, res);
      if (!p.pass) r.failures.push_back(p.label);
      r.pairs.push_back(std::move(p));
    }
  }
  if (!r.structure_ok) r.failures.emplace_back("subset structure");
  if (!r.antisymmetric) r.failures.emplace_back("table antisymmetry");
  r.passed = r.failures.empty();
  return r;
}

/// Highest Fock level carrying weight in rho.
inline int support_level(const CMatrix& rho, double tol = 1e-14) {
  int top = -1;
  for (Eigen::Index m = 0; m < rho.rows(); ++m) {
    for (Eigen::Index k = 0; k < rho.cols(); ++k) {
      if (std::abs(rho(m, k)) > tol) top = std::max<int>(top, static_cast<int>(std::max(m, k)));
    }
  }
  return top;
}

/// tr(J rho), with O0 replaced by O0 - I/2.
inline cplx trace_identities(GeneratorId id, const DensityMatrix& rho) {
  const int n = rho.dim();
  detail::require(support_level(rho.matrix()) <= n - 3,
                  "trace_identities: rho must be supported on levels <= N-3");
  SuperOperator j = generator(id, n);
  if (id == GeneratorId::O0) j = j - 0.5 * SuperOperator::identity(n);
  return trace_pair(j, rho);
}

/// Moment expected for tr(J rho): zero on the conserving generators, and
/// <a+a + aa+>, <a+a+ + aa>, -i<a+a+ - aa> for O-, L1-, L2-.
inline cplx expected_trace(GeneratorId id, const DensityMatrix& rho) {
  const int n = rho.dim();
  const CMatrix a = annihilation_matrix(n);
  const CMatrix ad = a.adjoint();
  const CMatrix& r = rho.matrix();
  switch (id) {
    case GeneratorId::Om:
      return ((ad * a + a * ad) * r).trace();
    case GeneratorId::L1m:
      return ((ad * ad + a * a) * r).trace();
    case GeneratorId::L2m:
      return -I_UNIT * ((ad * ad - a * a) * r).trace();
    default:
      return 0.0;
  }
}

}  // namespace oscsym

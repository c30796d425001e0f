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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/SparseLU>

#include "oscsym/transforms.hpp"

namespace oscsym {

enum class Model { KL, CL, HPZ };

inline constexpr std::string_view model_name(Model m) {
  switch (m) {
    case Model::KL:
      return "kl";
    case Model::CL:
      return "cl";
    default:
      return "hpz";
  }
}

struct ModelParams {
  Model model = Model::KL;
  double omega0 = 1.0;
  double gamma = 0.1;
  double b = 1.0;
  double d = 0.0;

  void validate() const {
    detail::require(omega0 > 0.0 && std::isfinite(omega0), "ModelParams: omega0 must be positive");
    detail::require(gamma > 0.0 && std::isfinite(gamma), "ModelParams: gamma must be positive");
    detail::require(b > 0.0 && std::isfinite(b), "ModelParams: b must be positive");
    detail::require(std::isfinite(d), "ModelParams: d must be finite");
    detail::require(model == Model::HPZ || d == 0.0, "ModelParams: d is only allowed for HPZ");
  }
};

inline CoefficientVector model_coefficients(const ModelParams& p) {
  p.validate();
  const double w = p.omega0, g = p.gamma, b = p.b;
  switch (p.model) {
    case Model::KL:
      return {2 * w, 0, 0, g, -2 * g * b, 0, 0};
    case Model::CL:
      return {2 * w, 0, -g, g, -2 * g * b, -2 * g * b, 0};
    case Model::HPZ:
      return {2 * w, 0, -g, g, -2 * g * b, -2 * g * b, -p.d};
  }
  throw PreconditionError("model_coefficients: unknown model");
}

/// b = coth(omega0 / 2T) / 2 with k = 1.
inline double thermal_b(double omega0, double temperature) {
  detail::require(temperature >= 0.0, "thermal_b: temperature must be non-negative");
  detail::require(omega0 > 0.0, "thermal_b: omega0 must be positive");
  if (temperature == 0.0) return 0.5;
  return 0.5 / std::tanh(omega0 / (2.0 * temperature));
}

/// Inverse of thermal_b for b > 1/2.
inline double temperature_from_b(double omega0, double b) {
  detail::require(b > 0.5, "temperature_from_b: b must exceed 1/2");
  return omega0 / (2.0 * std::atanh(1.0 / (2.0 * b)));
}

struct PhaseSpaceOperators {
  CMatrix x, p, x2, p2, a2;
};

/// x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
inline PhaseSpaceOperators phase_space_operators(int n) {
  const CMatrix a = annihilation_matrix(n);
  const CMatrix ad = a.adjoint();
  const double s = 1.0 / std::sqrt(2.0);
  PhaseSpaceOperators o;
  o.x = s * (a + ad);
  o.p = (-I_UNIT * s) * (a - ad);
  o.x2 = o.x * o.x;
  o.p2 = o.p * o.p;
  o.a2 = a * a;
  return o;
}

struct Moments {
  double x = 0, p = 0, x2 = 0, p2 = 0, purity = 0, trace = 0, min_eig = 0;
  cplx a2 = 0.0;  // <aa>
};

inline Moments moments_of(const CMatrix& rho, const PhaseSpaceOperators& o) {
  Moments m;
  m.x = (o.x * rho).trace().real();
  m.p = (o.p * rho).trace().real();
  m.x2 = (o.x2 * rho).trace().real();
  m.p2 = (o.p2 * rho).trace().real();
  m.a2 = (o.a2 * rho).trace();
  m.purity = (rho * rho).trace().real();
  m.trace = rho.trace().real();
  m.min_eig = DensityMatrix(rho).min_eigenvalue();
  return m;
}

inline Moments moments_of(const DensityMatrix& rho) {
  return moments_of(rho.matrix(), phase_space_operators(rho.dim()));
}

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<Moments> moments;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  bool leakage_warning = false;  // trace or hermiticity drifted beyond 1e-8
};

/// rho(t) = exp(-K t) rho0. One propagator per distinct time step.
inline Trajectory evolve(const SuperOperator& k, const DensityMatrix& rho0, const std::vector<double>& times) {
  detail::require_same_dim(rho0.dim(), k.dim(), "evolve");
  detail::require(!times.empty() && times.front() >= 0.0, "evolve: times must be non-negative");
  for (std::size_t i = 1; i < times.size(); ++i) {
    detail::require(times[i] > times[i - 1], "evolve: times must be increasing");
  }
  const int n = k.dim();
  const CMatrix kd = k.dense();
  std::map<double, CMatrix> cache;
  auto propagator = [&](double dt) -> const CMatrix& {
    // round so that a uniform grid reuses one matrix
    const double key = std::round(dt * 1e12) / 1e12;
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, matrix_exponential(-dt * kd)).first;
    return it->second;
  };
  const PhaseSpaceOperators ops = phase_space_operators(n);
  Trajectory tr;
  CVector v = vectorize(rho0.matrix());
  double t_prev = 0.0;
  for (double t : times) {
    if (t > t_prev) v = propagator(t - t_prev) * v;
    t_prev = t;
    DensityMatrix rho(unvectorize(v, n));
    const Moments m = moments_of(rho.matrix(), ops);
    tr.max_trace_error = std::max(tr.max_trace_error, std::abs(rho.trace() - 1.0));
    tr.max_hermiticity_error = std::max(tr.max_hermiticity_error, rho.hermiticity_residual());
    tr.times.push_back(t);
    tr.states.push_back(std::move(rho));
    tr.moments.push_back(m);
  }
  tr.leakage_warning = tr.max_trace_error > 1e-8 || tr.max_hermiticity_error > 1e-8;
  return tr;
}

struct DegenerateKernelError : NumericalError {
  using NumericalError::NumericalError;
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;   // max |K vec(rho)|
  double agreement = 0.0;  // relative gap between the two bordered solutions
};

namespace detail {

// Solves K v = 0 with tr(v) = 1 by replacing one row of K with the trace functional.
inline std::optional<CVector> bordered_solve(const SparseMatrix& k, int n, Eigen::Index row) {
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(k.nonZeros() + n);
  for (Eigen::Index c = 0; c < k.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(k, c); it; ++it) {
      if (it.row() != row) t.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int m = 0; m < n; ++m) t.emplace_back(row, m * n + m, 1.0);
  SparseMatrix b(k.rows(), k.cols());
  b.setFromTriplets(t.begin(), t.end());
  b.makeCompressed();
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(b);
  if (lu.info() != Eigen::Success) return std::nullopt;
  CVector rhs = CVector::Zero(k.rows());
  rhs(row) = 1.0;
  CVector v = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !v.allFinite()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Normalized kernel vector of K. Two different bordered systems must agree,
/// otherwise the kernel is not one-dimensional.
inline SteadyState steady_state(const SuperOperator& k, double agreement_tol = 1e-6) {
  const int n = k.dim();
  const auto v0 = detail::bordered_solve(k.matrix(), n, 0);
  const auto v1 = detail::bordered_solve(k.matrix(), n, n + 1);
  if (!v0 || !v1) throw DegenerateKernelError("steady_state: kernel is not one-dimensional");
  const double scale = std::max(1.0, v0->cwiseAbs().maxCoeff());
  const double gap = (*v0 - *v1).cwiseAbs().maxCoeff() / scale;
  if (gap > agreement_tol) {
    throw DegenerateKernelError("steady_state: kernel is not one-dimensional");
  }
  CMatrix rho = unvectorize(*v0, n);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  const CVector r = k.matrix() * vectorize(rho);
  return {DensityMatrix(rho), r.cwiseAbs().maxCoeff(), gap};
}

struct ThermalDilation {
  double alpha = 0.0;
};
struct ThermalTranslation {
  double beta = 0.0;
};
struct HpzInvariance {
  double phi = 0.0;
  double xi = 0.0;
};
using InvarianceParams = std::variant<ThermalDilation, ThermalTranslation, HpzInvariance>;

struct MapResult {
  ModelParams params;
  TransformSequence sequence;
};

/// Sequence leaving the HPZ form invariant: exp(phi iM2) exp(xi O+) exp(xi L1+) exp(phi O0) exp(-phi iM2).
inline TransformSequence hpz_invariance_sequence(double phi, double xi) {
  return {{GeneratorId::iM2, phi},
          {GeneratorId::Op, xi},
          {GeneratorId::L1p, xi},
          {GeneratorId::O0, phi},
          {GeneratorId::iM2, -phi}};
}

inline MapResult form_invariance(const ModelParams& p, const InvarianceParams& params) {
  p.validate();
  MapResult r{p, {}};
  if (const auto* t = std::get_if<ThermalDilation>(&params)) {
    const double e = std::exp(t->alpha);
    r.params.b = p.b * e;
    r.params.d = p.d * e;
    r.sequence = {{GeneratorId::O0, t->alpha}};
  } else if (const auto* s = std::get_if<ThermalTranslation>(&params)) {
    detail::require(p.model == Model::CL, "form_invariance: translate applies to CL");
    r.params.b = p.b + s->beta / 2.0;
    r.sequence = {{GeneratorId::Op, s->beta}};
  } else {
    const auto& h = std::get<HpzInvariance>(params);
    detail::require(p.model == Model::HPZ, "form_invariance: hpz applies to HPZ");
    const double ep = std::exp(h.phi), em = std::exp(-h.phi);
    r.params.b = p.b * ep + h.xi * em;
    r.params.d = 2.0 * p.omega0 * ((p.d / (2.0 * p.omega0)) * ep - h.xi * em);
    r.sequence = hpz_invariance_sequence(h.phi, h.xi);
  }
  detail::require(r.params.b > 0.0, "form_invariance: transformed b is not positive");
  return r;
}

struct KlToCl {
  MapResult map;
  double theta = 0.0;
  double eta = 0.0;
};

/// sinh(theta) = -gamma/(2 omega0), eta = -2 b tanh(theta), sequence [exp(theta iM1), exp(eta L2+)].
inline KlToCl map_kl_to_cl(const ModelParams& p) {
  p.validate();
  detail::require(p.model == Model::KL, "map_kl_to_cl: source must be KL");
  const double theta = std::asinh(-p.gamma / (2.0 * p.omega0));
  const double eta = -2.0 * p.b * std::tanh(theta);
  ModelParams q{Model::CL, p.omega0 * std::cosh(theta), p.gamma, p.b / std::cosh(theta), 0.0};
  return {{q, {{GeneratorId::iM1, theta}, {GeneratorId::L2p, eta}}}, theta, eta};
}

struct ClToHpz {
  MapResult map;
  double zeta_bound = 0.0;  // positivity needs |zeta| <= sqrt(4b^2 - 1)
};

inline ClToHpz map_cl_to_hpz(const ModelParams& p, double zeta) {
  p.validate();
  detail::require(p.model == Model::CL, "map_cl_to_hpz: source must be CL");
  ModelParams q{Model::HPZ, p.omega0, p.gamma, p.b + zeta / 2.0, -2.0 * p.omega0 * zeta};
  const double disc = 4.0 * p.b * p.b - 1.0;
  return {{q, {{GeneratorId::L1p, zeta}}}, disc >= 0.0 ? std::sqrt(disc) : 0.0};
}

/// max |S K(p) S^-1 - K(p')| on the safe subspace at cutoff N.
inline double map_residual(const MapResult& m, const ModelParams& source, int n) {
  const SuperOperator k = superop_similarity(m.sequence, model_coefficients(source), n);
  return safe_residual(k, build_K(model_coefficients(m.params), n));
}

/// <o> = tr(o^dag rho) before and after transforming both o and rho by S.
inline std::pair<cplx, cplx> expectation_invariance_check(const TransformSequence& seq, const FockOperator& o,
                                                          const DensityMatrix& rho) {
  detail::require_same_dim(o.dim(), rho.dim(), "expectation_invariance_check");
  const int n = rho.dim();
  const SuperOperator s = transformation_operator(seq, n);
  const CMatrix o2 = apply(s, o.matrix());
  const CMatrix r2 = apply(s, rho.matrix());
  return {(o.matrix().adjoint() * rho.matrix()).trace(), (o2.adjoint() * r2).trace()};
}

/// Largest real part among the eigenvalues of -K.
inline double max_decay_real_part(const SuperOperator& k) {
  Eigen::ComplexEigenSolver<CMatrix> es(-k.dense(), false);
  return es.eigenvalues().real().maxCoeff();
}

}  // namespace oscsym

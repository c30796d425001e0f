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
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "oscsym/dynamics.hpp"

namespace oscsym {

/// Kernel exp[-2 mu Q^2 - i kappa Q r - (mu + nu) r^2 / 2] with Q = (x + x~)/2, r = x - x~.
struct GaussianParams {
  double mu = 0.0;
  double kappa = 0.0;
  double nu = 0.0;
};

/// Stationary kernel exp(-Q^2 / (2b + d/omega0) - b r^2 / 2).
struct StationaryGaussian {
  double b = 0.5;
  double d = 0.0;
  double omega0 = 1.0;

  double width() const { return 2.0 * b + d / omega0; }
};

inline GaussianParams gaussian_from_bd(const StationaryGaussian& s) {
  detail::require(s.omega0 > 0.0, "gaussian_from_bd: omega0 must be positive");
  const double w = s.width();
  detail::require(w != 0.0, "gaussian_from_bd: vanishing width 2b + d/omega0");
  const double mu = 1.0 / (2.0 * w);
  return {mu, 0.0, s.b - mu};
}

inline bool is_positive(const GaussianParams& g) { return g.mu > 0.0 && g.nu >= -1e-12; }

inline cplx gaussian_kernel(const GaussianParams& g, double q, double r) {
  return std::exp(cplx(-2.0 * g.mu * q * q - 0.5 * (g.mu + g.nu) * r * r, -g.kappa * q * r));
}

enum class DomainKind { thermal, translate, hpz, kl2cl, cl2hpz };

inline constexpr std::string_view domain_kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::thermal:
      return "thermal";
    case DomainKind::translate:
      return "translate";
    case DomainKind::hpz:
      return "hpz";
    case DomainKind::kl2cl:
      return "kl2cl";
    default:
      return "cl2hpz";
  }
}

inline std::optional<DomainKind> domain_kind_from_name(std::string_view s) {
  for (auto k : {DomainKind::thermal, DomainKind::translate, DomainKind::hpz, DomainKind::kl2cl,
                 DomainKind::cl2hpz}) {
    if (domain_kind_name(k) == s) return k;
  }
  return std::nullopt;
}

struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lower && x <= upper; }
};

/// Base state of a domain question: the stationary state of the named model.
struct DomainBase {
  double b = 1.0;
  double d = 0.0;
  double omega0 = 1.0;
  double gamma = 0.1;
  double phi = 0.0;  // hpz only
};

struct DomainBound {
  DomainKind kind;
  std::string parameter;
  Interval stated;                  // as usually quoted
  std::optional<Interval> derived;  // from b' >= 1/2 style substitution, where it differs
  std::optional<double> eta_min;    // kl2cl: eta >= gamma / (2 omega0)
};

inline DomainBound domain_bound(DomainKind kind, const DomainBase& base) {
  detail::require(base.b > 0.0 && base.omega0 > 0.0, "domain_bound: b and omega0 must be positive");
  DomainBound r{kind, "", {}, std::nullopt, std::nullopt};
  const double b = base.b;
  switch (kind) {
    case DomainKind::thermal:
      r.parameter = "alpha";
      r.stated.lower = std::log(2.0 * b);
      r.derived = Interval{-std::log(2.0 * b), std::numeric_limits<double>::infinity()};
      break;
    case DomainKind::translate:
      r.parameter = "beta";
      r.stated.lower = -(2.0 * b - 1.0);
      break;
    case DomainKind::hpz: {
      r.parameter = "xi";
      const double w = 2.0 * b + base.d / base.omega0;
      detail::require(w > 0.0, "domain_bound: hpz base needs 2b + d/omega0 > 0");
      const double e2 = std::exp(2.0 * base.phi);
      r.stated.lower = 2.0 / w - 2.0 * b * e2;
      r.derived = Interval{1.0 / (2.0 * w) - b * e2, std::numeric_limits<double>::infinity()};
      break;
    }
    case DomainKind::kl2cl: {
      r.parameter = "theta";
      detail::require(2.0 * b >= 1.0, "domain_bound: kl2cl needs b >= 1/2");
      const double t = std::acosh(2.0 * b);
      r.stated = {-t, t};
      r.eta_min = base.gamma / (2.0 * base.omega0);
      break;
    }
    case DomainKind::cl2hpz: {
      r.parameter = "zeta";
      detail::require(2.0 * b >= 1.0, "domain_bound: cl2hpz needs b >= 1/2");
      const double z = std::sqrt(4.0 * b * b - 1.0);
      r.stated = {-z, z};
      break;
    }
  }
  return r;
}

/// Parameter -> transformation, for boundary scans.
using SequenceFamily = std::function<TransformSequence(double)>;

inline SequenceFamily domain_family(DomainKind kind, const DomainBase& base) {
  switch (kind) {
    case DomainKind::thermal:
      return [](double a) { return TransformSequence{{GeneratorId::O0, a}}; };
    case DomainKind::translate:
      return [](double x) { return TransformSequence{{GeneratorId::Op, x}}; };
    case DomainKind::hpz:
      return [phi = base.phi](double xi) { return hpz_invariance_sequence(phi, xi); };
    case DomainKind::kl2cl:
      return [b = base.b](double t) {
        return TransformSequence{{GeneratorId::iM1, t}, {GeneratorId::L2p, -2.0 * b * std::tanh(t)}};
      };
    default:
      return [](double z) { return TransformSequence{{GeneratorId::L1p, z}}; };
  }
}

/// Generator whose stationary state is the base state of the scan.
inline CoefficientVector domain_base_generator(DomainKind kind, const DomainBase& base) {
  switch (kind) {
    case DomainKind::thermal:
    case DomainKind::kl2cl:
      return model_coefficients({Model::KL, base.omega0, base.gamma, base.b, 0.0});
    case DomainKind::hpz:
      return model_coefficients({Model::HPZ, base.omega0, base.gamma, base.b, base.d});
    default:
      return model_coefficients({Model::CL, base.omega0, base.gamma, base.b, 0.0});
  }
}

/// How the transformed generator is formed.
enum class SimilarityRoute {
  closed_form,  // build_K(apply_sequence(seq, c)) at N
  padded,       // superop_similarity, independent of the closed forms
};

/// Frame exp(phi iM2) exp(theta iL0) that rounds the phase-space covariance.
struct BalanceFrame {
  double theta = 0.0;
  double phi = 0.0;
};

struct PositivityProbe {
  double min_eigenvalue = 0.0;
  bool positive = false;
  bool valid = false;     // covariance positive definite
  bool balanced = false;  // covariance rounded to a circle in the final frame
  BalanceFrame frame;
  Moments moments;
};

namespace detail {

using Mat2 = Eigen::Matrix2d;

// Phase-space action of the frame: rotation by theta/2, then x -> x e^{phi/2}, p -> p e^{-phi/2}.
inline Mat2 frame_matrix(const BalanceFrame& f) {
  const double c = std::cos(f.theta / 2.0), s = std::sin(f.theta / 2.0);
  Mat2 rot;
  rot << c, -s, s, c;
  Mat2 sq = Mat2::Zero();
  sq(0, 0) = std::exp(f.phi / 2.0);
  sq(1, 1) = std::exp(-f.phi / 2.0);
  return sq * rot;
}

inline Mat2 covariance(const CMatrix& rho, const PhaseSpaceOperators& o, const Moments& m) {
  const double sym = 0.5 * ((o.x * o.p + o.p * o.x) * rho).trace().real();
  Mat2 c;
  c << m.x2 - m.x * m.x, sym - m.x * m.p, sym - m.x * m.p, m.p2 - m.p * m.p;
  return c;
}

inline SuperOperator transformed_generator(const TransformSequence& seq, const CoefficientVector& c, int n,
                                           SimilarityRoute route) {
  if (route == SimilarityRoute::closed_form) return build_K(apply_sequence(seq, c), n);
  return superop_similarity(seq, c, n);
}

}  // namespace detail

namespace detail {

inline TransformSequence scaled(const TransformSequence& seq, double t) {
  std::vector<TransformStep> out;
  for (const auto& s : seq.steps()) out.emplace_back(s.generator(), t * s.parameter());
  return TransformSequence(std::move(out));
}

inline PositivityProbe balanced_probe(const TransformSequence& seq, const CoefficientVector& c, int n,
                                      BalanceFrame& warm, SimilarityRoute route) {
  const PhaseSpaceOperators ops = phase_space_operators(n);
  PositivityProbe probe;
  BalanceFrame f = warm;
  for (int iter = 0; iter < 8; ++iter) {
    const TransformSequence full =
        TransformSequence{{GeneratorId::iM2, f.phi}, {GeneratorId::iL0, f.theta}} * seq;
    // Off balance the truncated kernel is only roughly one-dimensional; that
    // is enough to pick the next frame.
    const SteadyState ss = steady_state(detail::transformed_generator(full, c, n, route), 0.1);
    probe.moments = moments_of(ss.rho.matrix(), ops);
    probe.min_eigenvalue = probe.moments.min_eig;
    probe.frame = f;
    const detail::Mat2 cov = detail::covariance(ss.rho.matrix(), ops, probe.moments);
    const double tr = cov.trace();
    const double det = cov.determinant();
    probe.valid = cov(0, 0) > 0.0 && cov(1, 1) > 0.0 && det > 0.0;
    probe.balanced = false;
    if (!probe.valid) break;
    const double skew = (std::abs(cov(0, 0) - cov(1, 1)) + 2.0 * std::abs(cov(0, 1))) / tr;
    probe.balanced = skew < 1e-3;
    if (probe.balanced) {
      if (ss.agreement > 1e-4) throw DegenerateKernelError("steady_state: kernel is not one-dimensional");
      break;
    }
    // Undo the current frame, then choose rotation and squeeze from scratch.
    const detail::Mat2 m = detail::frame_matrix(f).inverse();
    const detail::Mat2 base = m * cov * m.transpose();
    Eigen::SelfAdjointEigenSolver<detail::Mat2> es(base);
    const double l1 = es.eigenvalues()(0), l2 = es.eigenvalues()(1);
    if (!(l1 > 0.0)) break;
    const Eigen::Vector2d v = es.eigenvectors().col(0);
    // rotate so that v lies on the x axis, then equalize the widths
    const double psi = std::atan2(v(1), v(0));
    f.theta = -2.0 * psi;
    f.phi = 0.5 * std::log(l2 / l1);
  }
  if (probe.valid) warm = probe.frame;
  probe.positive = probe.valid && probe.min_eigenvalue >= -1e-9;
  return probe;
}

}  // namespace detail

/// Minimum eigenvalue of S rho_base, where rho_base is the stationary state of K(c).
/// The state is computed as the stationary state of S K S^-1, viewed in a
/// unitary frame that undoes squeezing so the Fock cutoff stays adequate.
inline PositivityProbe transformed_min_eigenvalue(const TransformSequence& seq, const CoefficientVector& c, int n,
                                                  BalanceFrame& warm,
                                                  SimilarityRoute route = SimilarityRoute::closed_form) {
  try {
    return detail::balanced_probe(seq, c, n, warm, route);
  } catch (const DegenerateKernelError&) {
    // A badly squeezed starting frame leaves no usable kernel at this cutoff.
    // Walk the parameters up from zero and carry the frame along.
    BalanceFrame f;
    constexpr int steps = 8;
    for (int k = 1; k < steps; ++k) detail::balanced_probe(detail::scaled(seq, double(k) / steps), c, n, f, route);
    warm = f;
    return detail::balanced_probe(seq, c, n, warm, route);
  }
}

struct NumericBoundary {
  double boundary = 0.0;
  double positive_side = 0.0;  // last parameter found positive
  double negative_side = 0.0;  // last parameter found not positive
  int evaluations = 0;
};

/// Bisection for the edge of the positive domain between lo and hi, which must
/// straddle it.
inline NumericBoundary numeric_positivity_boundary(const SequenceFamily& family, const CoefficientVector& base, int n,
                                                   double lo, double hi, double tol = 1e-5,
                                                   SimilarityRoute route = SimilarityRoute::closed_form) {
  detail::require(n >= 30, "numeric_positivity_boundary: cutoff must be at least 30");
  NumericBoundary out;
  BalanceFrame warm;
  auto probe = [&](double x) {
    ++out.evaluations;
    try {
      return transformed_min_eigenvalue(family(x), base, n, warm, route).positive;
    } catch (const DegenerateKernelError&) {
      // no usable stationary state at this cutoff, so positivity is not established
      warm = {};
      return false;
    }
  };
  const bool plo = probe(lo);
  warm = {};
  const bool phi = probe(hi);
  if (plo == phi) throw PreconditionError("numeric_positivity_boundary: no sign change in range");
  double pos = plo ? lo : hi, neg = plo ? hi : lo;
  warm = {};
  probe(pos);
  while (std::abs(pos - neg) > tol) {
    const double mid = 0.5 * (pos + neg);
    (probe(mid) ? pos : neg) = mid;
  }
  out.positive_side = pos;
  out.negative_side = neg;
  out.boundary = 0.5 * (pos + neg);
  return out;
}

/// Default scan interval, chosen so one end is safely inside the positive domain.
inline Interval default_scan_range(DomainKind kind, const DomainBase& base, bool upper_edge) {
  const DomainBound bound = domain_bound(kind, base);
  switch (kind) {
    case DomainKind::thermal: {
      const double edge = bound.derived->lower;
      return {edge - 1.0, edge + 1.0};
    }
    case DomainKind::translate:
      return {bound.stated.lower - 0.5, bound.stated.lower + 1.0};
    case DomainKind::hpz: {
      const double a = std::min(bound.stated.lower, bound.derived->lower);
      const double b = std::max(bound.stated.lower, bound.derived->lower);
      return {a - 0.5, b + 1.0};
    }
    case DomainKind::kl2cl:
    case DomainKind::cl2hpz: {
      const double e = bound.stated.upper;
      // the transformed width stays positive for |parameter| < 2b in the cl2hpz family
      const double far = std::min(e + 0.8, kind == DomainKind::cl2hpz ? 2.0 * base.b - 0.02 : e + 0.8);
      return upper_edge ? Interval{0.0, far} : Interval{-far, 0.0};
    }
  }
  return {};
}

enum class DerivativeMode { analytic, finite_difference };

/// Coefficient convention for the HPZ drift term in the position form.
enum class HpzDrift {
  generator,  // -d L2+ maps to (i d / 2) r d/dQ
  doubled,    // i d r d/dQ
};

struct GridSpec {
  int points = 201;
  double half_width_sigmas = 6.0;
  double fd_step = 0.02;
};

/// max |K rho| / max |rho| on a (Q, r) grid for the stationary kernel.
inline double position_rep_residual(const ModelParams& p, const StationaryGaussian& s, const GridSpec& grid = {},
                                    DerivativeMode mode = DerivativeMode::analytic,
                                    HpzDrift drift = HpzDrift::generator) {
  detail::require(grid.points >= 201 && grid.half_width_sigmas >= 6.0, "position_rep_residual: under-resolved grid");
  detail::require(s.width() > 0.0 && s.b > 0.0, "position_rep_residual: kernel not normalizable");
  const CoefficientVector c = model_coefficients(p);
  const double a = 1.0 / s.width();
  const double bb = s.b / 2.0;
  auto rho = [&](double q, double r) { return std::exp(-a * q * q - bb * r * r); };
  const double g2 = drift == HpzDrift::doubled ? 2.0 * c.g2 : c.g2;
  const double sq = std::sqrt(s.width() / 2.0), sr = 1.0 / std::sqrt(s.b);
  const double h = grid.fd_step;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.points; ++i) {
    const double q = grid.half_width_sigmas * sq * (2.0 * i / (grid.points - 1) - 1.0);
    for (int j = 0; j < grid.points; ++j) {
      const double r = grid.half_width_sigmas * sr * (2.0 * j / (grid.points - 1) - 1.0);
      const double f = rho(q, r);
      double fq, fqq, fr, fqr;
      if (mode == DerivativeMode::analytic) {
        fq = -2.0 * a * q * f;
        fqq = (4.0 * a * a * q * q - 2.0 * a) * f;
        fr = -2.0 * bb * r * f;
        fqr = 4.0 * a * bb * q * r * f;
      } else {
        // fourth-order centered stencils
        static constexpr double w1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
        static constexpr double w2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
        fq = fqq = fr = fqr = 0.0;
        for (int u = 0; u < 5; ++u) {
          const double fu = rho(q + (u - 2) * h, r);
          fq += w1[u] * fu;
          fqq += w2[u] * fu;
          fr += w1[u] * rho(q, r + (u - 2) * h);
          for (int v = 0; v < 5; ++v) fqr += w1[u] * w1[v] * rho(q + (u - 2) * h, r + (v - 2) * h);
        }
        fq /= 12 * h;
        fqq /= 12 * h * h;
        fr /= 12 * h;
        fqr /= 144 * h * h;
      }
      // position forms of the generators acting on f
      const cplx il0 = 0.5 * I_UNIT * (q * r * f - fqr);
      const double im2 = -0.5 * (q * fq + r * fr + f);
      const double o0 = -0.5 * (q * fq - r * fr);
      const double op = 0.25 * (fqq - r * r * f);
      const double l1p = -0.25 * (r * r * f + fqq);
      const cplx l2p = -0.5 * I_UNIT * r * fq;
      const cplx k = c.h0 * il0 + c.h2 * im2 + c.g0 * (o0 - 0.5 * f) + c.gp * op + c.g1 * l1p + g2 * l2p;
      num = std::max(num, std::abs(k));
      den = std::max(den, f);
    }
  }
  return num / den;
}

/// max |rho*(Q, -r) - rho(Q, r)| on a grid.
inline double kernel_hermiticity_residual(const GaussianParams& g, double half_width = 5.0, int points = 101) {
  double out = 0.0;
  for (int i = 0; i < points; ++i) {
    const double q = half_width * (2.0 * i / (points - 1) - 1.0);
    for (int j = 0; j < points; ++j) {
      const double r = half_width * (2.0 * j / (points - 1) - 1.0);
      out = std::max(out, std::abs(std::conj(gaussian_kernel(g, q, -r)) - gaussian_kernel(g, q, r)));
    }
  }
  return out;
}

}  // namespace oscsym

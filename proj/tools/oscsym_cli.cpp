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

// oscsym command-line tool.
//
//   oscsym verify  --fock-dim 12 --tol 1e-10
//   oscsym evolve  --model kl --b 1 --init fock:1 --t-max 100 --steps 200
//   oscsym map     --from kl --to cl --gamma 0.6
//   oscsym domain  --kind translate --b 1
//   oscsym steady  --model hpz --b 1 --d 0.5
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration,
// 3 degenerate stationary kernel.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscsym/oscsym.hpp"

using json = nlohmann::ordered_json;
using namespace oscsym;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadConfig = 2, kDegenerate = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 12 significant digits
double r12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return r12(x);
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << text;
  }
};

struct Checks {
  json list = json::array();
  bool all = true;

  void add(const std::string& name, double residual, double threshold) {
    const bool pass = residual <= threshold;
    all = all && pass;
    list.push_back({{"check", name}, {"residual", num(residual)}, {"threshold", threshold}, {"pass", pass}});
    std::cerr << name << ": " << (pass ? "pass" : "FAIL") << "\n";
  }
};

struct ModelArgs {
  std::string model = "kl";
  double omega0 = 1.0;
  double gamma = 0.1;
  double b = 1.0;
  double d = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "kl, cl or hpz")->check(CLI::IsMember({"kl", "cl", "hpz"}));
    attach_numbers(app);
  }
  void attach_numbers(CLI::App* app) {
    app->add_option("--omega0", omega0, "oscillator frequency");
    app->add_option("--gamma", gamma, "relaxation rate");
    app->add_option("--b", b, "thermal parameter");
    app->add_option("--d", d, "HPZ diffusion coefficient");
  }
};

Model model_from(const std::string& s) {
  if (s == "kl") return Model::KL;
  if (s == "cl") return Model::CL;
  if (s == "hpz") return Model::HPZ;
  throw ConfigError("unknown model " + s);
}

ModelParams params_from(const ModelArgs& a, Model m) {
  ModelParams p{m, a.omega0, a.gamma, a.b, m == Model::HPZ ? a.d : 0.0};
  if (m != Model::HPZ && a.d != 0.0) throw ConfigError("--d applies to the hpz model only");
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

json params_json(const ModelParams& p) {
  const auto c = model_coefficients(p).to_array();
  json coeffs = json::array();
  for (double v : c) coeffs.push_back(num(v));
  return {{"model", std::string(model_name(p.model))}, {"omega0", num(p.omega0)}, {"gamma", num(p.gamma)},
          {"b", num(p.b)}, {"d", num(p.d)}, {"coefficients", coeffs}};
}

json steps_json(const TransformSequence& s) {
  json out = json::array();
  for (const auto& st : s.steps()) {
    out.push_back({{"generator", std::string(name_of(st.generator()))}, {"parameter", num(st.parameter())}});
  }
  return out;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  int fock_dim = 12;
  double tol = 1e-10;
  std::uint64_t seed = 20260101;
  Output out;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.fock_dim < 8 || a.fock_dim > 24) throw ConfigError("--fock-dim must be between 8 and 24");
  if (!(a.tol > 0.0)) throw ConfigError("--tol must be positive");
  const int n = a.fock_dim;
  Checks c;

  const auto table = verify_commutation_table(n, a.tol);
  for (const auto& p : table.pairs) c.add(p.label, p.residual, a.tol);
  c.add("table structure", table.structure_ok && table.antisymmetric ? 0.0 : 1.0, 0.0);

  const auto four = verify_fourdim_table(1e-13);
  for (const auto& p : four.pairs) c.add("4x4 " + p.label, p.residual, 1e-13);
  c.add("4x4 beta symmetry", four.max_beta_symmetry, 1e-13);

  const GeneratorSet g(n);
  for (auto id : ALL_GENERATORS) {
    c.add("adjoint symmetry " + std::string(name_of(id)), adjoint_symmetry_residual(g[id]), 1e-11);
  }

  std::mt19937_64 rng(a.seed);
  double zero = 0.0, moment = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto rho = random_density(n, n - 4, rng);
    for (auto id : ALL_GENERATORS) {
      const double d = std::abs(trace_identities(id, rho) - expected_trace(id, rho));
      double& slot = subset_of(id) == Subset::Jminus ? moment : zero;
      slot = std::max(slot, d);
    }
  }
  c.add("trace identities (conserving)", zero, a.tol);
  c.add("trace identities (moments)", moment, a.tol);

  for (auto id : ALL_GENERATORS) {
    double worst = 0.0;
    for (double th : {0.3, 1.0}) worst = std::max(worst, symplectic_check(id, th));
    c.add("symplectic " + std::string(name_of(id)), worst, 1e-12);
  }
  const auto comp = completeness_orthogonality();
  c.add("completeness", comp.completeness_residual, 1e-14);
  c.add("orthogonality", comp.orthogonality_residual, 1e-14);

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto id : CONSERVING_GENERATORS) {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const TransformStep st(id, u(rng));
      std::array<double, 7> v{};
      for (auto& x : v) x = u(rng);
      const auto coef = CoefficientVector::from_array(v);
      const auto k1 = superop_similarity(TransformSequence{st}, coef, n);
      const auto k2 = build_K(coefficient_map(st, coef), n);
      worst = std::max(worst, safe_residual(k1, k2));
    }
    c.add("coefficient map " + std::string(name_of(id)), worst, 1e-8);
  }

  json report = {{"command", "verify"}, {"fock_dim", n}, {"seed", a.seed}, {"pass", c.all}, {"checks", c.list}};
  a.out.write(report.dump(2) + "\n");
  return c.all ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- evolve

struct EvolveArgs {
  ModelArgs m;
  int fock_dim = 20;
  std::string init = "vacuum";
  double t_max = 10.0;
  int steps = 100;
  std::optional<double> check_x2;
  double check_tol = 1e-4;
  Output out;
};

DensityMatrix initial_state(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad number in --init " + spec);
    }
    if (used != s.size()) throw ConfigError("bad number in --init " + spec);
    return v;
  };
  if (kind == "vacuum" && arg.empty()) return DensityMatrix::fock(n, 0);
  if (kind == "fock") {
    const double k = number(arg);
    if (k != std::floor(k) || k < 0 || k >= n - 3) throw ConfigError("fock level must be in [0, N-4]");
    return DensityMatrix::fock(n, static_cast<int>(k));
  }
  if (kind == "gibbs") {
    const double alpha = number(arg);
    if (!(alpha >= 0.0) || alpha > 10.0) throw ConfigError("gibbs alpha must be in [0, 10]");
    return gibbs_from_vacuum(alpha, n).state;
  }
  if (kind == "coherent") {
    // coherent:RE or coherent:RE,IM
    const auto comma = arg.find(',');
    const double re = number(arg.substr(0, comma));
    const double im = comma == std::string::npos ? 0.0 : number(arg.substr(comma + 1));
    if (std::hypot(re, im) > 2.0) throw ConfigError("coherent amplitude must satisfy |z| <= 2");
    CMatrix rho = coherent_state(cplx(re, im), n);
    return DensityMatrix(rho / rho.trace());
  }
  throw ConfigError("unknown --init " + spec);
}

int cmd_evolve(const EvolveArgs& a) {
  const ModelParams p = params_from(a.m, model_from(a.m.model));
  if (a.fock_dim < 6 || a.fock_dim > 40) throw ConfigError("--fock-dim must be between 6 and 40");
  if (!(a.t_max > 0.0) || !std::isfinite(a.t_max)) throw ConfigError("--t-max must be positive");
  if (a.steps < 1 || a.steps > 100000) throw ConfigError("--steps must be between 1 and 100000");
  const DensityMatrix rho0 = initial_state(a.init, a.fock_dim);

  std::vector<double> times;
  for (int k = 0; k <= a.steps; ++k) times.push_back(a.t_max * k / a.steps);
  const auto tr = evolve(build_K(model_coefficients(p), a.fock_dim), rho0, times);

  std::ostringstream csv;
  csv << "t,re_x,re_p,x2,p2,purity,trace,min_eig\r\n";
  char line[512];
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto& m = tr.moments[i];
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\r\n", tr.times[i], r12(m.x),
                  r12(m.p), m.x2, m.p2, m.purity, m.trace, r12(m.min_eig));
    csv << line;
  }
  a.out.write(csv.str());
  if (tr.leakage_warning) {
    std::cerr << "warning: trace or hermiticity drifted beyond 1e-8, raise --fock-dim\n";
  }
  if (a.check_x2) {
    const double err = std::abs(tr.moments.back().x2 - *a.check_x2);
    std::cerr << "final x2 " << r12(tr.moments.back().x2) << ", expected " << *a.check_x2 << ": "
              << (err <= a.check_tol ? "pass" : "FAIL") << "\n";
    if (err > a.check_tol) return kCheckFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------- map

struct MapArgs {
  ModelArgs m;
  std::string from, to, invariance;
  double zeta = 0.0, alpha = 0.0, beta = 0.0, phi = 0.0, xi = 0.0;
  int fock_dim = 14;
  double threshold = 1e-8;
  Output out;
};

int cmd_map(const MapArgs& a) {
  if (a.fock_dim < 6 || a.fock_dim > 24) throw ConfigError("--fock-dim must be between 6 and 24");
  MapResult r;
  ModelParams source;
  json extra = json::object();
  if (!a.invariance.empty()) {
    if (!a.from.empty() || !a.to.empty()) throw ConfigError("use either --invariance or --from/--to");
    source = params_from(a.m, model_from(a.m.model));
    try {
      if (a.invariance == "thermal") {
        r = form_invariance(source, ThermalDilation{a.alpha});
      } else if (a.invariance == "translate") {
        r = form_invariance(source, ThermalTranslation{a.beta});
      } else if (a.invariance == "hpz") {
        r = form_invariance(source, HpzInvariance{a.phi, a.xi});
      } else {
        throw ConfigError("unknown --invariance " + a.invariance);
      }
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
  } else if (a.from == "kl" && a.to == "cl") {
    source = params_from(a.m, Model::KL);
    const auto k = map_kl_to_cl(source);
    r = k.map;
    extra = {{"theta", num(k.theta)}, {"eta", num(k.eta)}};
  } else if (a.from == "cl" && a.to == "hpz") {
    source = params_from(a.m, Model::CL);
    const auto k = map_cl_to_hpz(source, a.zeta);
    r = k.map;
    extra = {{"zeta", num(a.zeta)}, {"zeta_bound", num(k.zeta_bound)},
             {"within_positive_domain", std::abs(a.zeta) <= k.zeta_bound}};
  } else {
    throw ConfigError("supported maps: --from kl --to cl, --from cl --to hpz, --invariance thermal|translate|hpz");
  }
  for (const auto& st : r.sequence.steps()) {
    if (std::abs(st.parameter()) > MAX_TRANSFORM_PARAMETER) throw ConfigError("transformation parameter exceeds 10");
  }
  const double res = map_residual(r, source, a.fock_dim);
  const bool pass = res <= a.threshold;
  std::cerr << "superoperator residual: " << (pass ? "pass" : "FAIL") << "\n";
  json report = {{"command", "map"},
                 {"source", params_json(source)},
                 {"target", params_json(r.params)},
                 {"steps", steps_json(r.sequence)},
                 {"parameters", extra},
                 {"check", "superoperator residual"},
                 {"residual", num(res)},
                 {"threshold", a.threshold},
                 {"pass", pass}};
  a.out.write(report.dump(2) + "\n");
  return pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- domain

struct DomainArgs {
  std::string kind;
  DomainBase base;
  int fock_dim = 40;
  std::string edge;
  double agree_tol = 1e-3;
  Output out;
};

json interval_json(const Interval& i) { return {{"lower", num(i.lower)}, {"upper", num(i.upper)}}; }

int cmd_domain(const DomainArgs& a) {
  const auto kind = domain_kind_from_name(a.kind);
  if (!kind) throw ConfigError("unknown --kind " + a.kind);
  if (a.fock_dim < 30 || a.fock_dim > 60) throw ConfigError("--fock-dim must be between 30 and 60");
  DomainBound bound;
  try {
    if (!(a.base.gamma > 0.0)) throw PreconditionError("gamma must be positive");
    if (*kind != DomainKind::hpz && a.base.d != 0.0) throw PreconditionError("--d applies to kind hpz only");
    bound = domain_bound(*kind, a.base);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  std::vector<bool> edges;
  const bool two_sided = *kind == DomainKind::kl2cl || *kind == DomainKind::cl2hpz;
  if (a.edge.empty() || a.edge == "both") {
    if (two_sided) edges = {false, true};
    else edges = {false};
  } else if (a.edge == "lower" || a.edge == "upper") {
    if (!two_sided && a.edge == "upper") throw ConfigError("this domain has no upper edge");
    edges = {a.edge == "upper"};
  } else {
    throw ConfigError("--edge must be lower, upper or both");
  }

  json numeric = json::array();
  bool agree = true;
  std::string verdict;
  for (bool upper : edges) {
    const Interval range = default_scan_range(*kind, a.base, upper);
    NumericBoundary nb;
    try {
      nb = numeric_positivity_boundary(domain_family(*kind, a.base), domain_base_generator(*kind, a.base),
                                       a.fock_dim, range.lower, range.upper);
    } catch (const PreconditionError& e) {
      std::cerr << "scan failed: " << e.what() << "\n";
      return kCheckFailed;
    }
    const double stated = upper ? bound.stated.upper : bound.stated.lower;
    const bool fits_stated = std::abs(nb.boundary - stated) <= a.agree_tol;
    bool fits_derived = false;
    json entry = {{"edge", upper ? "upper" : "lower"}, {"boundary", num(nb.boundary)},
                  {"scan", interval_json(range)}, {"evaluations", nb.evaluations}, {"fits_stated", fits_stated}};
    if (bound.derived) {
      const double derived = upper ? bound.derived->upper : bound.derived->lower;
      fits_derived = std::abs(nb.boundary - derived) <= a.agree_tol;
      entry["fits_derived"] = fits_derived;
      verdict = fits_derived && !fits_stated ? "derived" : fits_stated && !fits_derived ? "stated"
                : fits_stated ? "both" : "neither";
    }
    agree = agree && (fits_stated || fits_derived);
    std::cerr << "boundary " << (upper ? "upper" : "lower") << ": " << (fits_stated || fits_derived ? "pass" : "FAIL")
              << "\n";
    numeric.push_back(entry);
  }
  json report = {{"command", "domain"}, {"kind", a.kind}, {"parameter", bound.parameter},
                 {"stated", interval_json(bound.stated)}};
  if (bound.derived) report["derived"] = interval_json(*bound.derived);
  if (bound.eta_min) report["eta_min"] = num(*bound.eta_min);
  report["numeric"] = numeric;
  if (!verdict.empty()) report["verdict"] = verdict;
  report["tolerance"] = a.agree_tol;
  report["agree"] = agree;
  a.out.write(report.dump(2) + "\n");
  return agree ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- steady

struct SteadyArgs {
  ModelArgs m;
  int fock_dim = 30;
  std::string populations;
  Output out;
};

int cmd_steady(const SteadyArgs& a) {
  const ModelParams p = params_from(a.m, model_from(a.m.model));
  if (a.fock_dim < 6 || a.fock_dim > 60) throw ConfigError("--fock-dim must be between 6 and 60");
  const StationaryGaussian sg{p.b, p.d, p.omega0};
  if (!(sg.width() > 0.0)) throw ConfigError("2b + d/omega0 must be positive");
  const int n = a.fock_dim;
  const auto ss = steady_state(build_K(model_coefficients(p), n));
  const Moments m = moments_of(ss.rho);
  const double x2 = p.b + p.d / (2.0 * p.omega0), p2 = p.b;

  Checks c;
  c.add("stationarity", ss.residual, 1e-8);
  c.add("x2 vs Gaussian", std::abs(m.x2 - x2), 1e-5);
  c.add("p2 vs Gaussian", std::abs(m.p2 - p2), 1e-5);
  json pops = json::array();
  for (int k = 0; k < std::min(n, 12); ++k) pops.push_back(num(ss.rho.matrix()(k, k).real()));
  json report = {{"command", "steady"}, {"params", params_json(p)}, {"fock_dim", n}};
  if (p.model == Model::KL) {
    const double ratio = ss.rho.matrix()(1, 1).real() / ss.rho.matrix()(0, 0).real();
    const double lambda = (2.0 * p.b - 1.0) / (2.0 * p.b + 1.0);
    c.add("geometric ratio", std::abs(ratio - lambda), 1e-6);
    report["ratio"] = num(ratio);
    report["expected_ratio"] = num(lambda);
  }
  const GaussianParams g = gaussian_from_bd(sg);
  const double pos_res = position_rep_residual(p, sg);
  c.add("position form", pos_res, 1e-6);
  report["moments"] = {{"x", num(m.x)}, {"p", num(m.p)}, {"x2", num(m.x2)}, {"p2", num(m.p2)},
                       {"purity", num(m.purity)}, {"min_eig", num(m.min_eig)}};
  report["expected"] = {{"x2", num(x2)}, {"p2", num(p2)}};
  report["gaussian"] = {{"mu", num(g.mu)}, {"kappa", num(g.kappa)}, {"nu", num(g.nu)},
                        {"positive", is_positive(g)}, {"boundary", std::abs(g.nu) <= 1e-9}};
  report["populations"] = pops;
  report["pass"] = c.all;
  report["checks"] = c.list;
  if (!a.populations.empty()) {
    std::ostringstream csv;
    csv << "n,population\r\n";
    char line[64];
    for (int k = 0; k < n; ++k) {
      std::snprintf(line, sizeof line, "%d,%.12g\r\n", k, ss.rho.matrix()(k, k).real());
      csv << line;
    }
    Output{a.populations}.write(csv.str());
  }
  a.out.write(report.dump(2) + "\n");
  return c.all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetries of damped-oscillator master equations in Liouville space"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 20260101;
  std::string out;
  app.add_option("--seed", seed, "seed for random test states")->capture_default_str();
  app.add_option("--out", out, "output file, default stdout");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("--fock-dim", va.fock_dim, "Fock cutoff N");
  verify->add_option("--tol", va.tol, "tolerance for Fock-space checks");

  EvolveArgs ea;
  auto* ev = app.add_subcommand("evolve", "time evolution, CSV of moments");
  ea.m.attach(ev);
  ev->add_option("--fock-dim", ea.fock_dim, "Fock cutoff N");
  ev->add_option("--init", ea.init, "vacuum, gibbs:ALPHA, fock:N or coherent:RE[,IM]");
  ev->add_option("--t-max", ea.t_max, "final time");
  ev->add_option("--steps", ea.steps, "number of time steps");
  ev->add_option("--check-final-x2", ea.check_x2, "fail unless the final <x^2> matches");
  ev->add_option("--check-tol", ea.check_tol, "tolerance for --check-final-x2");

  MapArgs ma;
  auto* mp = app.add_subcommand("map", "symmetry maps between generators");
  ma.m.attach(mp);
  mp->add_option("--from", ma.from, "source model");
  mp->add_option("--to", ma.to, "target model");
  mp->add_option("--invariance", ma.invariance, "thermal, translate or hpz");
  mp->add_option("--zeta", ma.zeta);
  mp->add_option("--alpha", ma.alpha);
  mp->add_option("--beta", ma.beta);
  mp->add_option("--phi", ma.phi);
  mp->add_option("--xi", ma.xi);
  mp->add_option("--fock-dim", ma.fock_dim, "cutoff for the residual");
  mp->add_option("--threshold", ma.threshold, "residual threshold");

  DomainArgs da;
  auto* dm = app.add_subcommand("domain", "positive domain of a transformation family");
  dm->add_option("--kind", da.kind, "thermal, translate, hpz, kl2cl or cl2hpz")->required();
  dm->add_option("--b", da.base.b);
  dm->add_option("--d", da.base.d);
  dm->add_option("--omega0", da.base.omega0);
  dm->add_option("--gamma", da.base.gamma);
  dm->add_option("--phi", da.base.phi);
  dm->add_option("--fock-dim", da.fock_dim, "cutoff for the eigenvalue scan");
  dm->add_option("--edge", da.edge, "lower, upper or both");
  dm->add_option("--agree-tol", da.agree_tol, "tolerance between numeric and closed forms");

  SteadyArgs sa;
  auto* st = app.add_subcommand("steady", "stationary state and Gaussian comparison");
  sa.m.attach(st);
  st->add_option("--fock-dim", sa.fock_dim, "Fock cutoff N");
  st->add_option("--populations", sa.populations, "CSV file for the Fock populations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  va.seed = seed;
  va.out.path = ea.out.path = ma.out.path = da.out.path = sa.out.path = out;
  try {
    if (*verify) return cmd_verify(va);
    if (*ev) return cmd_evolve(ea);
    if (*mp) return cmd_map(ma);
    if (*dm) return cmd_domain(da);
    if (*st) return cmd_steady(sa);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const DegenerateKernelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kBadConfig;
}

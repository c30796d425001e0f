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

// Walk through the thermal symmetry of a damped oscillator: dilate the vacuum
// into a Gibbs state, map a KL generator onto CL form, and find how far the
// thermal dilation can be pushed before the state stops being positive.

#include <cstdio>

#include "oscsym/oscsym.hpp"

using namespace oscsym;

int main() {
  const int n = 30;

  const auto gibbs = gibbs_from_vacuum(std::log(2.0), n);
  std::printf("exp(ln2 O0)|0><0|: population ratio %.6f\n", gibbs.q);
  for (int k = 0; k < 4; ++k) std::printf("  p%d = %.6f\n", k, gibbs.state.matrix()(k, k).real());

  const ModelParams kl{Model::KL, 1.0, 0.1, 1.0, 0.0};
  const auto ss = steady_state(build_K(model_coefficients(kl), n));
  std::printf("KL(b=1) steady state, p1/p0 = %.10f\n", ss.rho.matrix()(1, 1).real() / ss.rho.matrix()(0, 0).real());

  const auto heated = form_invariance(kl, ThermalDilation{std::log(1.5)});
  std::printf("dilation by ln 1.5: b -> %.6f, residual %.2e\n", heated.params.b, map_residual(heated, kl, 14));

  const ModelParams strong{Model::KL, 1.0, 0.6, 1.0, 0.0};
  const auto cl = map_kl_to_cl(strong);
  std::printf("KL(gamma=0.6) -> CL: omega0' = %.6f, b' = %.6f, residual %.2e\n", cl.map.params.omega0,
              cl.map.params.b, map_residual(cl.map, strong, 14));

  const DomainBase base;
  const auto bound = domain_bound(DomainKind::thermal, base);
  const auto range = default_scan_range(DomainKind::thermal, base, false);
  const auto scan = numeric_positivity_boundary(domain_family(DomainKind::thermal, base),
                                                domain_base_generator(DomainKind::thermal, base), 40, range.lower,
                                                range.upper);
  std::printf("thermal dilation stays positive for alpha >= %.5f (b e^alpha >= 1/2 gives %.5f)\n", scan.boundary,
              bound.derived->lower);
  return 0;
}

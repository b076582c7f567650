// Copyright 2026 The gqc Authors
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

// Seeded property suites behind `gqc verify`. Every check reports a worst
// residual and a pass flag; informational checks never fail.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gqc/channel_complexity.hpp"
#include "gqc/coherence.hpp"
#include "gqc/core.hpp"
#include "gqc/dilation.hpp"
#include "gqc/geometry.hpp"
#include "gqc/gksl.hpp"
#include "gqc/intrinsic.hpp"
#include "gqc/random.hpp"
#include "gqc/report.hpp"

namespace gqc {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  bool informational = false;
};

namespace verify_detail {

inline PropertyResult make(const std::string& suite, const std::string& name, double residual, double tol) {
  return {suite, name, residual <= tol, residual, tol, false};
}

inline Dilation random_dilation(int d_S, int d_E, Rng& rng) {
  return Dilation(d_S, d_E, random_density(d_E, rng), random_hermitian(d_S * d_E, rng));
}

inline std::vector<BenchmarkSpec> default_benchmarks() {
  return {{BenchmarkKind::dephasing, 1.0, {0.2}},
          {BenchmarkKind::amplitude_damping, 1.0, {0.3}},
          {BenchmarkKind::depolarizing, 1.0, {0.1}},
          {BenchmarkKind::pauli, 1.0, {0.05, 0.1, 0.2}}};
}

}  // namespace verify_detail

inline std::vector<PropertyResult> verify_operator_core(std::uint64_t seed) {
  using verify_detail::make;
  Rng rng(seed);
  double eig = 0, sq = 0, pt = 0, un = 0;
  for (int k = 0; k < 20; ++k) {
    const int d = 2 + k % 4;
    const HermitianOperator h = random_hermitian(d, rng);
    const SpectralDecomposition s = eig_hermitian(h);
    eig = std::max(eig, (reconstruct(s, s.eigenvalues) - h.matrix()).norm());
    const HermitianOperator p = random_psd(d, rng);
    const CMatrix r = sqrt_psd(p).matrix();
    sq = std::max(sq, (r * r - p.matrix()).norm());
    const CMatrix a = random_ginibre(d, d, rng);
    const DensityOperator e = random_density(2, rng);
    pt = std::max(pt, (partial_trace_env(tensor(a, e.matrix()), d, 2) - a).norm());
    const CMatrix u = unitary_evolve(h, 0.7).matrix();
    un = std::max(un, (u.adjoint() * u - CMatrix::Identity(d, d)).norm());
  }
  return {make("operator-core", "eig_reconstruction", eig, 1e-10),
          make("operator-core", "sqrt_psd_square", sq, 1e-9),
          make("operator-core", "partial_trace_of_product", pt, 1e-12),
          make("operator-core", "unitary_evolve_unitarity", un, 1e-10)};
}

inline std::vector<PropertyResult> verify_geometry(std::uint64_t seed) {
  using verify_detail::make;
  (void)seed;
  const PenaltyMetric uni = PenaltyMetric::uniform(2);
  const GeodesicPath g = euler_arnold_geodesic(uni, HermitianOperator(pauli_z()), 1.0, 128);
  double dev = 0;
  for (std::size_t k = 0; k < g.times.size(); ++k)
    dev = std::max(dev, (g.unitaries[k].matrix() -
                         unitary_evolve(HermitianOperator(pauli_z()), g.times[k]).matrix())
                            .norm());
  const PenaltyMetric an(2, default_su_basis(2), {1.0, 2.0, 5.0});
  const HermitianOperator a0 = HermitianOperator::symmetrized(0.3 * pauli_x() + 0.5 * pauli_y() + 0.2 * pauli_z());
  const GeodesicPath ga = euler_arnold_geodesic(an, a0, 2.0, 256);
  const double v0 = omega_norm(an, ga.body_velocities.front());
  double drift = 0;
  for (const auto& a : ga.body_velocities) drift = std::max(drift, std::abs(omega_norm(an, a) - v0));
  return {make("unitary-geometry", "uniform_geodesic_matches_exponential", dev, 1e-8),
          make("unitary-geometry", "anisotropic_speed_conservation", drift, 1e-7)};
}

inline std::vector<PropertyResult> verify_channel(std::uint64_t seed) {
  using verify_detail::make;
  Rng rng(seed);
  double gauge = 0;
  for (int k = 0; k < 20; ++k) {
    const Dilation d = verify_detail::random_dilation(2, 2 + k % 2, rng);
    const HermitianOperator hs = random_hermitian(2, rng);
    const double v = channel_complexity(d, hs, 1.0).value;
    for (int g = 0; g < 5; ++g)
      gauge = std::max(gauge, std::abs(channel_complexity(gauge_transform(d, random_unitary(d.d_E(), rng)), hs, 1.0).value - v));
  }
  double p1 = 0, p2 = 0, p4 = 0;
  for (int k = 0; k < 20; ++k) {
    const HermitianOperator hs = random_hermitian(2 + k % 3, rng);
    for (double t : {0.5, 1.0, 2.0}) {
      const auto r = channel_complexity(trivial_dilation(hs), hs, t);
      p1 = std::max(p1, std::abs(r.value - *r.system_unitary_term));
    }
    const HermitianOperator he = random_hermitian(2, rng);
    const Dilation env(2, 2, random_density(2, rng), HermitianOperator::symmetrized(embed_env(he.matrix(), 2)));
    p2 = std::max(p2, std::abs(channel_complexity(env, HermitianOperator::zero(2), 1.5).value));
    p4 = std::max(p4, trace_identity_check(random_psd(3 + k % 3, rng)).residual);
  }
  double scaling = 0;
  for (const auto& b : verify_detail::default_benchmarks()) {
    const GkslGenerator g = benchmark_channel(b);
    const Dilation d = standard_dilation(g, BathModel{}.spec_for(g.lindblad_ops().size()));
    const double v1 = channel_complexity(d, g.h_S(), 1.0).value;
    for (double c : {0.5, 2.0, 10.0})
      scaling = std::max(scaling, std::abs(channel_complexity(d, g.h_S(), c).value - c * v1) /
                                      std::max(1e-300, std::abs(c * v1)));
  }
  return {make("channel-complexity", "gauge_invariance", gauge, 1e-9),
          make("channel-complexity", "p1_closed_system", p1, 1e-10),
          make("channel-complexity", "p2_environment_only", p2, 1e-10),
          make("channel-complexity", "p4_trace_identity", p4, 1e-9),
          make("channel-complexity", "linear_time_scaling", scaling, 1e-12)};
}

inline std::vector<PropertyResult> verify_gksl(std::uint64_t seed) {
  using verify_detail::make;
  Rng rng(seed);
  const double gamma = 0.4, kappa = 0.7;
  const GkslGenerator dep = benchmark_channel({BenchmarkKind::dephasing, 0.0, {gamma}});
  const GkslGenerator ad = benchmark_channel({BenchmarkKind::amplitude_damping, 0.0, {kappa}});
  const DensityOperator plus = DensityOperator::pure((CVector(2) << 1.0, 1.0).finished());
  double closed = 0;
  for (int k = 0; k <= 30; ++k) {
    const double t = 3.0 / gamma * k / 30.0;
    closed = std::max(closed, std::abs(semigroup_evolve(dep, plus, t).matrix()(0, 1) - 0.5 * std::exp(-gamma * t)));
    const double ta = 3.0 / kappa * k / 30.0;
    closed = std::max(closed, std::abs(semigroup_evolve(ad, DensityOperator::basis_state(2, 1), ta).matrix()(1, 1).real() -
                                       std::exp(-kappa * ta)));
  }
  double semigroup = 0;
  const GkslGenerator dp = benchmark_channel({BenchmarkKind::depolarizing, 1.0, {0.3}});
  for (int k = 0; k < 10; ++k) {
    const DensityOperator r = random_density(2, rng);
    const DensityOperator a = semigroup_evolve(dp, semigroup_evolve(dp, r, 0.4), 0.7);
    semigroup = std::max(semigroup, (a.matrix() - semigroup_evolve(dp, r, 1.1).matrix()).norm());
  }
  double fixed_point = 0;
  {
    const DensityOperator r = random_density(2, rng);
    double prev = (r.matrix() - CMatrix::Identity(2, 2) / 2.0).norm();
    for (int k = 1; k <= 20; ++k) {
      const double cur = (semigroup_evolve(dp, r, 0.25 * k).matrix() - CMatrix::Identity(2, 2) / 2.0).norm();
      fixed_point = std::max(fixed_point, cur - prev);
      prev = cur;
    }
  }
  double gadd = 0;
  {
    std::vector<CMatrix> all = dep.lindblad_ops();
    for (const auto& l : ad.lindblad_ops()) all.push_back(l);
    gadd = std::abs(dissipator_scale(GkslGenerator(dep.h_S(), all)) - dissipator_scale(dep) - dissipator_scale(ad));
  }
  double dom = 0;
  for (const auto& b : verify_detail::default_benchmarks()) {
    const GkslGenerator g = benchmark_channel(b);
    const StandardDilationSpec env = BathModel{}.spec_for(g.lindblad_ops().size());
    const Dilation d = standard_dilation(g, env);
    for (int k = 1; k <= 10; ++k) {
      const double t = 0.3 * k;
      const double v = channel_complexity(d, g.h_S(), t).value;
      const GrowthBound gb = growth_bound(g, env, t);
      dom = std::max({dom, v - gb.bound_reduced, gb.bound_reduced - gb.bound_full, gb.bound_reduced - coarse_bound(g, env, t)});
    }
  }
  double mixing_hs = 0, mixing_op = 0;
  for (int k = 0; k < 10; ++k) {
    const CMatrix u = random_unitary(3, rng).matrix();
    const GkslGenerator m = mix_lindblad_ops(dp, u);
    mixing_hs = std::max(mixing_hs, std::abs(dissipator_scale_hs(m) - dissipator_scale_hs(dp)));
    mixing_op = std::max(mixing_op, std::abs(dissipator_scale(m) - dissipator_scale(dp)));
  }
  PropertyResult obs{"gksl-lab", "gamma_opnorm_mixing_residual", true, mixing_op, 0.0, true};
  return {make("gksl-lab", "closed_form_decay", closed, 1e-9),
          make("gksl-lab", "semigroup_law", semigroup, 1e-8),
          make("gksl-lab", "depolarizing_monotone_approach", std::max(0.0, fixed_point), 1e-12),
          make("gksl-lab", "gamma_additivity", gadd, 0.0),
          make("gksl-lab", "bound_domination", std::max(0.0, dom), 1e-9),
          make("gksl-lab", "hs_scale_mixing_invariance", mixing_hs, 1e-12),
          obs};
}

inline std::vector<PropertyResult> verify_coherence(std::uint64_t seed) {
  using verify_detail::make;
  Rng rng(seed);
  double idem = 0, self = 0, contr = 0, cid = 0, comm = 0;
  for (int k = 0; k < 50; ++k) {
    const CMatrix a = random_ginibre(3, 3, rng), b = random_ginibre(3, 3, rng);
    idem = std::max(idem, (dephase(dephase(a)) - dephase(a)).norm());
    self = std::max(self, std::abs(hs_inner(a, dephase(b)) - hs_inner(dephase(a), b)));
    contr = std::max(contr, dephase(a).norm() - a.norm());
    const DensityOperator r = random_density(3, rng);
    const CoherenceReport c = coherence(r);
    cid = std::max(cid, std::abs(c.c_value - c.offdiag_norm_sq));
    const HermitianOperator h = random_hermitian(3, rng);
    comm = std::max(comm, hs_norm(commutator(h.matrix(), r.matrix())) - 2.0 * hs_norm(h.matrix()));
  }
  double growth = 0;
  for (int k = 0; k < 5; ++k) {
    const HermitianOperator h0 = random_hermitian(2, rng), h1 = random_hermitian(2, rng);
    const HamiltonianPath path = HamiltonianPath::sample(
        [&](double s) { return HermitianOperator::symmetrized((1 - s / 2) * h0.matrix() + (s / 2) * h1.matrix()); },
        0.0, 2.0, 11, false);
    const GrowthReport g = coherence_growth_check(path, DensityOperator::basis_state(2, 0));
    for (const auto& r : g.rows)
      if (r.t > 0) growth = std::max(growth, -r.margin);
  }
  const LowerBoundSweep sw = lower_bound_sweep(100, seed);
  PropertyResult change_bound{"coherence-bounds", "coherence_change_bound_violations", true,
                            static_cast<double>(sw.change_violations), 0.0, true};
  return {make("coherence-bounds", "dephase_idempotent", idem, 1e-12),
          make("coherence-bounds", "dephase_self_adjoint", self, 1e-12),
          make("coherence-bounds", "dephase_contractive", std::max(0.0, contr), 1e-12),
          make("coherence-bounds", "coherence_offdiag_identity", cid, 1e-10),
          make("coherence-bounds", "commutator_bound", std::max(0.0, comm), 0.0),
          make("coherence-bounds", "growth_inequality", std::max(0.0, growth), 0.0),
          make("coherence-bounds", "sqrt_coherence_bound_violations", sw.sqrt_violations, 0.0),
          change_bound};
}

inline std::vector<PropertyResult> verify_intrinsic(std::uint64_t seed) {
  using verify_detail::make;
  const HermitianOperator h = benchmark_hamiltonian(1.0);
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  OptimizerOptions o;
  o.seed = seed;
  o.starts = 4;
  o.max_iters = 40;
  AdmissibleConstraints c;
  c.d_E_max = 1;
  c.J_max = 2.0;
  c.t_grid = grid;
  const OptimizationResult r = intrinsic_complexity(target_from_unitary(h, grid), c, h, 1.0, o);
  const double recover = std::abs(r.best_value - hs_complexity_static(h, 1.0, 2));

  const GkslGenerator g = benchmark_channel({BenchmarkKind::dephasing, 1.0, {0.2}});
  const Dilation seed_d = standard_dilation(g, BathModel{}.spec_for(1));
  AdmissibleConstraints c2 = c;
  c2.d_E_max = 2;
  c2.J_max = 4.0;
  const OptimizationResult r2 = intrinsic_complexity(target_from_dilation(seed_d, grid), c2, h, 1.0, o);
  const double dom = r2.best_value - channel_complexity(seed_d, h, 1.0).value;
  return {make("intrinsic-optimizer", "unitary_target_recovery", recover, 1e-6),
          make("intrinsic-optimizer", "seed_dominance", std::max(0.0, dom), 1e-9)};
}

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"operator-core", "unitary-geometry", "channel-complexity",
                                                 "gksl-lab", "coherence-bounds", "intrinsic-optimizer"};
  return names;
}

/// `suite` is "all" or one of verify_suite_names().
inline std::vector<PropertyResult> run_verify(const std::string& suite, std::uint64_t seed) {
  const std::vector<std::pair<std::string, std::function<std::vector<PropertyResult>(std::uint64_t)>>> all = {
      {"operator-core", verify_operator_core},   {"unitary-geometry", verify_geometry},
      {"channel-complexity", verify_channel},    {"gksl-lab", verify_gksl},
      {"coherence-bounds", verify_coherence},    {"intrinsic-optimizer", verify_intrinsic}};
  std::vector<PropertyResult> out;
  bool found = false;
  for (const auto& [name, fn] : all) {
    if (suite != "all" && suite != name) continue;
    found = true;
    for (auto& r : fn(seed)) out.push_back(std::move(r));
  }
  if (!found) throw ValidationError("--suite", "unknown suite '" + suite + "'");
  return out;
}

inline ReportTable verify_table(const std::vector<PropertyResult>& results, std::uint64_t seed) {
  ReportTable t("verify", {"suite", "property", "residual", "tolerance", "status"}, seed);
  for (const auto& r : results)
    t.add_row({r.suite, r.name, r.residual, r.tolerance,
               std::string(r.informational ? "info" : r.pass ? "pass" : "FAIL")});
  return t;
}

}  // namespace gqc

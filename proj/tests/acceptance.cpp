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

// Acceptance checks: one PASS/FAIL line per criterion, with the measured
// quantity and wall time. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gqc/channel_complexity.hpp"
#include "gqc/coherence.hpp"
#include "gqc/dilation.hpp"
#include "gqc/geometry.hpp"
#include "gqc/gksl.hpp"
#include "gqc/intrinsic.hpp"
#include "gqc/random.hpp"
#include "gqc/verify.hpp"

using namespace gqc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Dilation random_dilation(int d_S, int d_E, Rng& rng) {
  return Dilation(d_S, d_E, random_density(d_E, rng), random_hermitian(d_S * d_E, rng));
}

std::vector<BenchmarkSpec> benchmark_specs() {
  return {{BenchmarkKind::dephasing, 1.0, {0.2}},
          {BenchmarkKind::dephasing, 1.0, {1.0}},
          {BenchmarkKind::amplitude_damping, 1.0, {0.3}},
          {BenchmarkKind::amplitude_damping, 1.0, {1.5}},
          {BenchmarkKind::depolarizing, 1.0, {0.1}},
          {BenchmarkKind::depolarizing, 1.0, {0.8}},
          {BenchmarkKind::pauli, 1.0, {0.05, 0.1, 0.2}}};
}

std::vector<double> grid(double t1, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(t1 * k / (n - 1));
  return g;
}

// ---------------------------------------------------------------------------

Outcome ideal_unitary() {
  const HermitianOperator h(0.5 * pauli_z());
  const auto t0 = std::chrono::steady_clock::now();
  const double v = hs_complexity_static(h, 1.0, 2);
  const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  const double expect = (1.0 / std::sqrt(3.0)) * (std::sqrt(2.0) / 2.0);
  const double err = std::abs(v - expect);
  return {err <= 1e-10 && us < 1000.0, fmt("value %.12f", v) + fmt(", |err| %.2e, call %.1f us", err, us)};
}

Outcome gauge_invariance() {
  Rng rng(2026);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int d_E = 2 + k % 2;
    const Dilation d = random_dilation(2, d_E, rng);
    const HermitianOperator h_S = random_hermitian(2, rng);
    for (int g = 0; g < 10; ++g) {
      const Dilation dg = gauge_transform(d, random_unitary(d_E, rng));
      for (double t : {0.3, 1.0, 2.7})
        worst = std::max(worst, std::abs(channel_complexity(d, h_S, t).value - channel_complexity(dg, h_S, t).value));
    }
  }
  return {worst <= 1e-9, fmt("max orbit deviation %.2e over 50 dilations x 10 gauges", worst)};
}

Outcome postulates() {
  Rng rng(31);
  const std::vector<double> ts = {0.0, 0.5, 1.0, 2.0};
  double p1 = 0.0, p2 = 0.0, p4 = 0.0;
  bool applicable = true;
  for (int k = 0; k < 20; ++k) {
    const HermitianOperator h_S = random_hermitian(2 + k % 3, rng);
    const auto r = postulate_check(trivial_dilation(h_S), h_S, ts, PostulateOptions{2, static_cast<std::uint64_t>(k)});
    applicable = applicable && r.p1.applicable;
    p1 = std::max(p1, r.p1.residual);
  }
  for (int k = 0; k < 20; ++k) {
    const int d_S = 2, d_E = 2 + k % 2;
    const Dilation env(d_S, d_E, random_density(d_E, rng),
                       HermitianOperator(embed_env(random_hermitian(d_E, rng).matrix(), d_S)));
    for (double t : ts) p2 = std::max(p2, std::abs(channel_complexity(env, HermitianOperator::zero(d_S), t).value));
  }
  for (int k = 0; k < 100; ++k) {
    const HermitianOperator x = random_psd(2 + k % 5, rng);
    const auto chk = trace_identity_check(x);
    p4 = std::max(p4, chk.residual);
  }
  const bool pass = applicable && p1 <= 1e-10 && p2 <= 1e-10 && p4 <= 1e-9;
  return {pass, fmt("P1 residual %.2e, P2 max |value| %.2e", p1, p2) + fmt(", P4 max residual %.2e", p4)};
}

Outcome time_scaling() {
  const BathModel bath;
  double worst = 0.0;
  for (const auto& s : benchmark_specs()) {
    const GkslGenerator g = benchmark_channel(s);
    const Dilation d = standard_dilation(g, bath.spec_for(g.lindblad_ops().size()));
    for (double t : {0.1, 0.5, 1.0, 2.0, 3.0})
      for (double c : {0.5, 2.0, 10.0}) {
        const double a = channel_complexity(d, g.h_S(), c * t).value;
        const double b = c * channel_complexity(d, g.h_S(), t).value;
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
      }
  }
  return {worst <= 1e-12, fmt("max relative deviation %.2e", worst)};
}

Outcome coherence_suite() {
  Rng rng(404);
  double proj = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 3;
    const CMatrix a = random_ginibre(d, d, rng), b = random_ginibre(d, d, rng);
    proj = std::max(proj, (dephase(dephase(a)) - dephase(a)).norm());
    proj = std::max(proj, std::abs(hs_inner(a, dephase(b)) - hs_inner(dephase(a), b)));
    proj = std::max(proj, std::max(0.0, dephase(a).norm() - a.norm()));
  }
  double cres = 0.0;
  for (int k = 0; k < 200; ++k) {
    const DensityOperator r = random_density(2 + k % 3, rng);
    const auto rep = coherence(r);
    CMatrix tau = r.matrix();
    tau.diagonal().setZero();
    cres = std::max(cres, std::abs(rep.c_value - tau.squaredNorm()));
  }
  int comm_viol = 0;
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 3;
    const HermitianOperator h = random_hermitian(d, rng);
    const DensityOperator r = (k % 2) ? random_density(d, rng) : random_pure_state(d, rng);
    if (commutator(h.matrix(), r.matrix()).norm() > 2.0 * h.matrix().norm()) ++comm_viol;
  }
  int growth_fail = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 20; ++k) {
    const HermitianOperator h0 = random_traceless_hermitian(2, rng), h1 = random_traceless_hermitian(2, rng);
    const DensityOperator r0 = (k % 2) ? random_density(2, rng) : DensityOperator::basis_state(2, 0);
    const double w = 0.5 + k * 0.1;
    const auto path = HamiltonianPath::sample(
        [&](double s) { return HermitianOperator::symmetrized(h0.matrix() + std::sin(w * s) * h1.matrix()); }, 0.0,
        2.0, 21);
    const GrowthReport rep = coherence_growth_check(path, r0, 1e-9);
    for (std::size_t j = 1; j < rep.rows.size(); ++j) {
      min_margin = std::min(min_margin, rep.rows[j].margin);
      if (!(rep.rows[j].margin > 0.0)) ++growth_fail;
    }
  }
  const bool pass = proj <= 1e-12 && cres <= 1e-10 && comm_viol == 0 && growth_fail == 0;
  return {pass, fmt("projector residual %.2e, C vs ||tau||^2 %.2e", proj, cres) +
                    fmt(", commutator violations %.0f, min growth margin %.3e", comm_viol, min_margin)};
}

Outcome lower_bounds() {
  const LowerBoundSweep s = lower_bound_sweep(100, 20260);
  return {s.sqrt_violations == 0,
          fmt("sqrt(C) bound violations %.0f (min margin %.3e)", s.sqrt_violations, s.min_sqrt_margin) +
              fmt("; coherence-change bound violations %.0f (min margin %.3e), reported only", s.change_violations,
                  s.min_change_margin)};
}

Outcome gksl_closed_forms() {
  double worst = 0.0;
  CVector plus(2);
  plus << 1.0, 1.0;
  const DensityOperator p = DensityOperator::pure(plus);
  for (double gamma : {0.1, 0.5, 2.0}) {
    const GkslGenerator g = benchmark_channel({BenchmarkKind::dephasing, 0.0, {gamma}});
    for (double t : grid(3.0 / gamma, 31))
      worst = std::max(worst, std::abs(semigroup_evolve(g, p, t).matrix()(0, 1) - 0.5 * std::exp(-gamma * t)));
  }
  const DensityOperator one = DensityOperator::basis_state(2, 1);
  for (double kappa : {0.1, 0.7, 3.0}) {
    const GkslGenerator g = benchmark_channel({BenchmarkKind::amplitude_damping, 1.0, {kappa}});
    for (double t : grid(3.0 / kappa, 31))
      worst = std::max(worst, std::abs(semigroup_evolve(g, one, t).matrix()(1, 1).real() - std::exp(-kappa * t)));
  }
  return {worst <= 1e-9, fmt("max deviation from closed forms %.2e", worst)};
}

Outcome bound_domination() {
  const BathModel bath;
  int violations = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  const std::vector<BenchmarkSpec> specs = verify_detail::default_benchmarks();
  for (const auto& s : specs) {
    const GkslGenerator g = benchmark_channel(s);
    const auto env = bath.spec_for(g.lindblad_ops().size());
    const Dilation d = standard_dilation(g, env);
    for (double t : grid(3.0, 11)) {
      const auto gb = growth_bound(g, env, t);
      const double v = channel_complexity(d, g.h_S(), t).value;
      const double coarse = coarse_bound(g, env, t);
      worst_gap = std::max(worst_gap, v - gb.bound_reduced);
      if (v > gb.bound_reduced + 1e-9 || gb.bound_reduced > gb.bound_full + 1e-9 || gb.bound_reduced > coarse + 1e-9)
        ++violations;
    }
  }
  const double gamma = 0.37, kappa = 0.61;
  const double a1 = std::abs(sum_lindblad_hs(benchmark_channel({BenchmarkKind::dephasing, 1.0, {gamma}})) - std::sqrt(gamma));
  const double a2 =
      std::abs(sum_lindblad_hs(benchmark_channel({BenchmarkKind::amplitude_damping, 1.0, {kappa}})) - std::sqrt(kappa));
  const double a3 =
      std::abs(sum_lindblad_hs(benchmark_channel({BenchmarkKind::depolarizing, 1.0, {gamma}})) - 3.0 * std::sqrt(gamma));
  const double anchor = std::max({a1, a2, a3});
  return {violations == 0 && anchor <= 1e-15,
          fmt("violations %.0f, max (value - reduced) %.3e", violations, worst_gap) + fmt(", anchor error %.1e", anchor)};
}

Outcome intrinsic_sanity() {
  OptimizerOptions o;
  o.starts = 4;
  o.seed = 17;
  o.max_iters = 40;
  const HermitianOperator h_S(0.5 * pauli_z());
  const std::vector<double> g3 = {0.0, 0.5, 1.0};

  AdmissibleConstraints cu{1, 2.0, std::nullopt, std::nullopt, 1e-6, g3};
  const auto ru = intrinsic_complexity(target_from_unitary(h_S, g3), cu, h_S, 1.0, o);
  const double err_u = std::abs(ru.best_value - hs_complexity_static(h_S, 1.0, 2));

  const GkslGenerator gen = benchmark_channel({BenchmarkKind::dephasing, 1.0, {0.2}});
  const Dilation seed = standard_dilation(gen, BathModel{}.spec_for(1));
  const ChannelTarget dt = target_from_dilation(seed, g3);
  AdmissibleConstraints cs{2, 2.0, std::nullopt, std::nullopt, 1e-6, g3};
  const auto rs = intrinsic_complexity(dt, cs, h_S, 1.0, o);
  const double seed_gap = rs.best_value - channel_complexity(seed, h_S, 1.0).value;

  struct Pair {
    ChannelTarget target;
    AdmissibleConstraints small, large;
  };
  const std::vector<Pair> pairs = {
      {target_from_unitary(h_S, g3), cu, AdmissibleConstraints{2, 2.0, std::nullopt, std::nullopt, 1e-6, g3}},
      {dt, cs, AdmissibleConstraints{2, 4.0, std::nullopt, std::nullopt, 1e-6, g3}},
      {dt, AdmissibleConstraints{2, 4.0, std::nullopt, std::nullopt, 1e-6, g3},
       AdmissibleConstraints{3, 4.0, std::nullopt, std::nullopt, 1e-6, g3}}};
  int mono_fail = 0;
  std::string mono;
  for (const auto& p : pairs) {
    const auto a = intrinsic_complexity(p.target, p.small, h_S, 1.0, o);
    const auto b = intrinsic_complexity(p.target, p.large, h_S, 1.0, o, {a.best_dilation});
    if (!(a.feasible && b.feasible && b.best_value <= a.best_value + 1e-9)) ++mono_fail;
    mono += fmt(" %.6f->", a.best_value) + fmt("%.6f", b.best_value);
  }
  const bool pass = ru.feasible && err_u <= 1e-6 && rs.feasible && seed_gap <= 1e-9 && mono_fail == 0;
  return {pass, fmt("unitary |err| %.2e, best - seed %.3e", err_u, seed_gap) + ", nested pairs" + mono};
}

Outcome euler_arnold() {
  const PenaltyMetric uni = PenaltyMetric::uniform(2);
  const GeodesicPath g = euler_arnold_geodesic(uni, HermitianOperator(pauli_z()), 1.0, 128);
  double err = 0.0;
  for (std::size_t k = 0; k < g.times.size(); ++k)
    err = std::max(err, (g.unitaries[k].matrix() - unitary_evolve(HermitianOperator(pauli_z()), g.times[k]).matrix()).norm());
  const PenaltyMetric aniso(2, default_su_basis(2), {1.0, 2.5, 6.0});
  const HermitianOperator a0 =
      HermitianOperator::symmetrized(0.7 * pauli_x() + 0.2 * pauli_y() - 0.5 * pauli_z());
  const GeodesicPath ga = euler_arnold_geodesic(aniso, a0, 4.0, 256);
  const double v0 = omega_norm(aniso, ga.body_velocities.front());
  double drift = 0.0;
  for (const auto& a : ga.body_velocities) drift = std::max(drift, std::abs(omega_norm(aniso, a) - v0));
  return {err <= 1e-8 && drift <= 1e-7, fmt("uniform geodesic error %.2e, anisotropic speed drift %.2e", err, drift)};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + GQC_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "gqc_acceptance_determinism";
  fs::remove_all(root);
  const std::string samples = GQC_SAMPLES_DIR;
  int mismatches = 0, compared = 0, failures = 0;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = root / run;
    fs::create_directories(dir);
    failures += run_cli("bench --spec \"" + samples + "/benchmarks.json\" --out \"" + dir.string() + "\"") != 0;
    failures += run_cli("intrinsic --spec \"" + samples + "/intrinsic_dephasing.json\" --out \"" + dir.string() +
                        "\"") != 0;
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    if (entry.path().extension() != ".csv") continue;
    ++compared;
    const fs::path other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++mismatches;
  }
  const bool pass = failures == 0 && compared >= 5 && mismatches == 0;
  return {pass, fmt("%.0f CSV files compared, %.0f differ", compared, mismatches) +
                    (failures ? fmt(", %.0f CLI runs failed", failures) : std::string())};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {"ideal unitary complexity", 1.0, ideal_unitary},
      {"gauge invariance", 10.0, gauge_invariance},
      {"postulates P1 P2 P4", 5.0, postulates},
      {"linear time scaling", 1.0, time_scaling},
      {"coherence identities and growth inequality", 10.0, coherence_suite},
      {"coherence lower bound domination", 10.0, lower_bounds},
      {"GKSL closed forms", 1.0, gksl_closed_forms},
      {"growth bound domination", 5.0, bound_domination},
      {"intrinsic optimizer sanity", 60.0, intrinsic_sanity},
      {"Euler-Arnold geodesics", 1.0, euler_arnold},
      {"CLI determinism", 120.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = s <= c.budget_s;
    const bool pass = o.pass && in_budget;
    failed += !pass;
    std::printf("%s  %-44s %8.3f s (budget %g s)  %s%s\n", pass ? "PASS" : "FAIL", c.name, s, c.budget_s,
                o.detail.c_str(), in_budget ? "" : "  [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}

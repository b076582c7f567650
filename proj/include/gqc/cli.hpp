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

// Command-line front end. Exit codes: 0 success, 1 other error,
// 2 validation error, 3 infeasible optimization, 4 property failure.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqc/channel_complexity.hpp"
#include "gqc/gksl.hpp"
#include "gqc/intrinsic.hpp"
#include "gqc/io.hpp"
#include "gqc/report.hpp"
#include "gqc/verify.hpp"

namespace gqc {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitValidation = 2, kExitInfeasible = 3, kExitProperty = 4 };

namespace cli_detail {

struct Common {
  std::string spec;
  std::string out = ".";
  std::optional<double> t;
  std::string t_grid;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tol;
  std::string format = "csv";
  std::string suite = "all";
};

inline void add_common(CLI::App* sub, Common& c, bool h_alias = false) {
  sub->set_help_flag("--help", "print this help message and exit");
  auto* spec = sub->add_option("--spec", c.spec, "problem file (JSON)");
  if (h_alias) sub->add_option("--h", c.spec, "Hamiltonian file: bare matrix or unitary problem")->excludes(spec);
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--t", c.t, "evaluation time");
  sub->add_option("--t-grid", c.t_grid, "time grid start:stop:n");
  sub->add_option("--seed", c.seed, "seed");
  sub->add_option("--tol", c.tol, "tolerance override name=value (repeatable)");
  sub->add_option("--format", c.format, "comma-separated list of csv, svg");
}

inline std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

inline json load_doc(const Common& c, const std::string& kind) {
  json doc;
  if (c.spec.empty()) {
    doc = {{"kind", kind}, {"payload", json::object()}};
  } else {
    doc = read_json_file(c.spec);
    // A bare matrix is accepted as the Hamiltonian of a unitary problem.
    if (kind == "unitary" && doc.is_object() && doc.contains("rows") && !doc.contains("kind"))
      doc = {{"kind", "unitary"}, {"payload", {{"h", doc}}}};
  }
  if (!doc.is_object()) throw ValidationError("document", "expected an object");
  if (!doc.contains("kind")) doc["kind"] = kind;
  if (problem_kind_from_string(doc["kind"].get<std::string>()) != problem_kind_from_string(kind))
    throw ValidationError("kind", "file is a '" + doc["kind"].get<std::string>() + "' problem, not '" + kind + "'");
  for (const auto& item : c.tol) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--tol", "expected name=value, got '" + item + "'");
    double v = 0.0;
    try {
      v = std::stod(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ValidationError("--tol", "bad value in '" + item + "'");
    }
    doc["tolerances"][item.substr(0, eq)] = v;
  }
  if (c.seed) doc["seed"] = *c.seed;
  return doc;
}

inline void stamp(ReportTable& t, const ProblemSpec& spec) {
  t.metadata()["artifact_version"] = std::string("gqc ") + kVersion;
  t.metadata()["seed"] = std::to_string(t.seed());
  t.metadata()["tolerances"] = tolerances_to_json(spec.tolerances).dump();
  t.metadata()["timestamp"] = timestamp();
}

inline std::vector<double> times_for(const Common& c, const std::optional<std::vector<double>>& from_file,
                                     double fallback) {
  if (!c.t_grid.empty()) return parse_t_grid_flag(c.t_grid);
  if (c.t) {
    if (!(*c.t >= 0.0)) throw ValidationError("--t", "must be >= 0");
    return {*c.t};
  }
  if (from_file) return *from_file;
  return {fallback};
}

inline void report_files(std::ostream& out, const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) out << "wrote " << f.string() << "\n";
}

// ---------------------------------------------------------------------------
// subcommands

inline int cmd_unitary(const Common& c, std::ostream& out) {
  if (c.spec.empty()) throw ValidationError("--h", "a Hamiltonian file is required");
  const ProblemSpec spec = parse_problem(load_doc(c, "unitary"));
  const auto& p = std::get<UnitaryProblem>(spec.payload);
  const std::vector<double> ts = times_for(c, p.t ? std::optional<std::vector<double>>(std::vector<double>{*p.t}) : std::nullopt, 1.0);
  ReportTable t("unitary", {"t", "complexity", "hs_norm", "traceless_norm", "dim"}, spec.seed);
  for (double s : ts) {
    const double g = hs_complexity_static(p.h, s, p.h.dim());
    t.add_row({s, g, hs_norm(p.h.matrix()), traceless_part_norm(p.h), static_cast<double>(p.h.dim())});
    out << "t = " << format_number(s) << "  G_hs = " << format_number(g) << "\n";
  }
  stamp(t, spec);
  report_files(out, emit_report(t, c.out, parse_formats(c.format)));
  return kExitOk;
}

inline int cmd_channel(const Common& c, std::ostream& out, bool noise) {
  if (c.spec.empty()) throw ValidationError("--spec", "a problem file is required");
  const std::string kind = noise ? "noise" : "channel";
  json doc = load_doc(c, kind);
  const ProblemSpec spec = parse_problem(doc);
  const auto& p = std::get<ChannelProblem>(spec.payload);
  const std::vector<double> ts = times_for(c, p.t_grid, 1.0);
  ReportTable t(kind, {"t", "total_term", "surrogate_term", "value", "noise_value", "embedded_unitary_term",
                       "system_unitary_term", "negative_flag"},
                spec.seed);
  for (double s : ts) {
    const ChannelComplexityReport r = channel_complexity(p.dilation, p.h_S, s);
    const double nv = r.noise_value.value_or(0.0);
    t.add_row({s, r.total_term, r.surrogate_term, r.value, nv, r.embedded_unitary_term,
               r.system_unitary_term.value_or(0.0), r.negative_flag ? 1.0 : 0.0});
    out << "t = " << format_number(s) << "  " << (noise ? "N_hs = " : "G_hs = ")
        << format_number(noise ? nv : r.value) << (r.negative_flag ? "  (negative)" : "") << "\n";
  }
  const PostulateReport pr = postulate_check(p.dilation, p.h_S, ts, PostulateOptions{10, spec.seed});
  auto line = [&](const char* name, const PostulateResult& r) {
    out << name << ": " << (!r.applicable ? "n/a" : r.pass ? "pass" : "FAIL")
        << " (residual " << format_number(r.residual) << ")\n";
  };
  line("P1", pr.p1);
  line("P2", pr.p2);
  line("P3", pr.p3);
  line("P4", pr.p4);
  stamp(t, spec);
  t.metadata()["postulates_pass"] = pr.all_pass() ? "true" : "false";
  report_files(out, emit_report(t, c.out, parse_formats(c.format)));
  return kExitOk;
}

inline int cmd_intrinsic(const Common& c, std::ostream& out) {
  if (c.spec.empty()) throw ValidationError("--spec", "a problem file is required");
  json doc = load_doc(c, "intrinsic");
  if (c.seed) doc["payload"]["optimizer"]["seed"] = *c.seed;
  const ProblemSpec spec = parse_problem(doc);
  const auto& p = std::get<IntrinsicProblem>(spec.payload);
  const double t_eval = c.t ? *c.t : p.t_eval.value_or(p.constraints.t_grid.back());
  OptimizerOptions opts = p.optimizer;
  ReportTable t("intrinsic", {"index", "d_E", "origin", "value", "channel_residual", "op_norm", "feasible"},
                opts.seed);
  json result;
  const OptimizationResult* best = nullptr;
  std::optional<IntrinsicNoiseResult> nres_store;
  std::optional<OptimizationResult> cres_store;
  if (p.noise) {
    nres_store = intrinsic_noise(p.target, p.constraints, p.h_S, t_eval, opts, p.extra_starts);
    const IntrinsicNoiseResult& nres = *nres_store;
    best = &nres.direct;
    result = {{"mode", "noise"}, {"value", nres.value}, {"simplified", nres.simplified}, {"ideal", nres.ideal},
              {"direct", result_to_json(nres.direct)}, {"complexity", result_to_json(nres.complexity)}};
    out << "intrinsic N_hs = " << format_number(nres.value) << "  (simplified " << format_number(nres.simplified)
        << ")\n";
  } else {
    cres_store = intrinsic_complexity(p.target, p.constraints, p.h_S, t_eval, opts, p.extra_starts);
    const OptimizationResult& cres = *cres_store;
    best = &cres;
    result = {{"mode", "complexity"}, {"result", result_to_json(cres)}};
    out << "intrinsic G_hs = " << format_number(cres.best_value) << "  (candidate " << cres.best_index
        << ", d_E = " << cres.best_dilation.d_E() << ", residual " << format_number(cres.channel_residual) << ")\n";
  }
  for (const auto& r : best->candidates)
    t.add_row({static_cast<double>(r.index), static_cast<double>(r.d_E), r.origin,
               std::isfinite(r.value) ? r.value : -1.0, r.channel_residual, r.op_norm, r.feasible ? 1.0 : 0.0});
  result["t_eval"] = t_eval;
  result["optimizer"] = optimizer_to_json(opts);
  stamp(t, spec);
  auto files = emit_report(t, c.out, parse_formats(c.format), PlotOptions{"index", {"value"}, {}});
  const auto rpath = std::filesystem::path(c.out) / (report_stem(t) + ".result.json");
  write_text(rpath, result.dump(2) + "\n");
  files.push_back(rpath);
  report_files(out, files);
  return kExitOk;
}

inline std::vector<double> default_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 10; ++k) g.push_back(0.3 * k);
  return g;
}

inline int cmd_gksl_bound(const Common& c, std::ostream& out) {
  if (c.spec.empty()) throw ValidationError("--spec", "a problem file is required");
  const ProblemSpec spec = parse_problem(load_doc(c, "gksl_bound"));
  const auto& p = std::get<GkslBoundProblem>(spec.payload);
  const std::vector<double> ts = times_for(c, p.t_grid, 1.0);
  std::vector<std::string> cols = {"t", "complexity_value", "bound_reduced", "bound_full", "bound_coarse",
                                   "gamma", "sum_l_hs"};
  if (p.constraints) cols.push_back("coarse_intrinsic");
  ReportTable t("gksl_bound", cols, spec.seed);
  const Dilation d = standard_dilation(p.generator, p.environment);
  for (double s : ts) {
    const double v = channel_complexity(d, p.generator.h_S(), s).value;
    const GrowthBound gb = growth_bound(p.generator, p.environment, s);
    std::vector<Cell> row = {s, v, gb.bound_reduced, gb.bound_full, coarse_bound(p.generator, p.environment, s),
                             dissipator_scale(p.generator), sum_lindblad_hs(p.generator)};
    if (p.constraints) row.push_back(coarse_intrinsic_bound(p.generator, p.environment, *p.constraints, s));
    t.add_row(row);
    out << "t = " << format_number(s) << "  G = " << format_number(v) << "  reduced = "
        << format_number(gb.bound_reduced) << "  full = " << format_number(gb.bound_full) << "\n";
  }
  stamp(t, spec);
  t.metadata()["rho_E"] = p.environment.rho_E ? "declared" : "ground state of h_E";
  report_files(out, emit_report(t, c.out, parse_formats(c.format)));
  return kExitOk;
}

inline int cmd_bench(const Common& c, std::ostream& out) {
  json doc = load_doc(c, "benchmark");
  if (c.spec.empty()) doc["payload"]["benchmarks"] = json::array();
  const ProblemSpec spec = parse_problem(doc);
  BenchmarkProblem p = std::get<BenchmarkProblem>(spec.payload);
  if (c.spec.empty()) p.benchmarks = verify_detail::default_benchmarks();
  const std::vector<double> ts = (!c.t_grid.empty() || c.t || p.t_grid) ? times_for(c, p.t_grid, 1.0)
                                                                         : default_grid();
  ReportTable table = benchmark_bounds_table(p.benchmarks, p.bath, ts, spec.seed);
  stamp(table, spec);
  const ReportFormats f = parse_formats(c.format);
  std::vector<std::filesystem::path> files;
  for (const auto& kind : table.distinct("kind")) {
    const ReportTable sub = table.filter("kind", kind, "bench_" + kind);
    for (auto& file : emit_report(sub, c.out, ReportFormats{f.csv, false})) files.push_back(file);
  }
  if (table.rows().empty() && f.csv)
    for (auto& file : emit_report(table, c.out, ReportFormats{true, false})) files.push_back(file);
  if (f.svg && !table.rows().empty())
    for (auto& file : emit_report(table, c.out, ReportFormats{false, true},
                                  PlotOptions{"t", {"complexity_value", "bound_reduced"}, {"kind", "rates"}}))
      files.push_back(file);
  std::size_t violations = 0;
  for (std::size_t r = 0; r < table.rows().size(); ++r)
    if (table.number(r, "complexity_value") > table.number(r, "bound_reduced") + 1e-9) ++violations;
  out << table.rows().size() << " rows, " << violations << " bound violations\n";
  report_files(out, files);
  return violations == 0 ? kExitOk : kExitProperty;
}

inline int cmd_verify(const Common& c, std::ostream& out) {
  std::string suite = c.suite;
  std::uint64_t seed = c.seed.value_or(7);
  if (!c.spec.empty()) {
    const ProblemSpec spec = parse_problem(load_doc(c, "verify"));
    if (suite == "all") suite = std::get<VerifyProblem>(spec.payload).suite;
    if (!c.seed) seed = spec.seed;
  }
  const std::vector<PropertyResult> results = run_verify(suite, seed);
  int failures = 0;
  for (const auto& r : results) {
    const char* status = r.informational ? "INFO" : r.pass ? "PASS" : "FAIL";
    if (!r.informational && !r.pass) ++failures;
    out << status << "  " << r.suite << "/" << r.name << "  residual " << format_number(r.residual);
    if (!r.informational) out << " (tol " << format_number(r.tolerance) << ")";
    out << "\n";
  }
  out << results.size() << " properties, " << failures << " failures\n";
  if (c.out != ".") {
    ReportTable t = verify_table(results, seed);
    t.metadata()["artifact_version"] = std::string("gqc ") + kVersion;
    t.metadata()["timestamp"] = timestamp();
    report_files(out, emit_report(t, c.out, parse_formats(c.format)));
  }
  return failures == 0 ? kExitOk : kExitProperty;
}

}  // namespace cli_detail

/// Runs one subcommand; `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"geometric quantum complexity toolkit", "gqc"};
  app.set_version_flag("--version", std::string("gqc ") + kVersion);
  app.require_subcommand(1);
  cli_detail::Common c;
  CLI::App* unitary = app.add_subcommand("unitary", "complexity of exp(-i t H)");
  CLI::App* channel = app.add_subcommand("channel", "channel complexity of a dilation");
  CLI::App* noise = app.add_subcommand("noise", "noise complexity of a dilation");
  CLI::App* intrinsic = app.add_subcommand("intrinsic", "intrinsic complexity by constrained minimization");
  CLI::App* gksl = app.add_subcommand("gksl-bound", "growth bounds for a GKSL generator");
  CLI::App* bench = app.add_subcommand("bench", "benchmark channel table");
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  cli_detail::add_common(unitary, c, true);
  for (CLI::App* s : {channel, noise, intrinsic, gksl, bench, verify}) cli_detail::add_common(s, c);
  verify->add_option("--suite", c.suite, "suite name or all");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "gqc " << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (unitary->parsed()) return cli_detail::cmd_unitary(c, out);
    if (channel->parsed()) return cli_detail::cmd_channel(c, out, false);
    if (noise->parsed()) return cli_detail::cmd_channel(c, out, true);
    if (intrinsic->parsed()) return cli_detail::cmd_intrinsic(c, out);
    if (gksl->parsed()) return cli_detail::cmd_gksl_bound(c, out);
    if (bench->parsed()) return cli_detail::cmd_bench(c, out);
    if (verify->parsed()) return cli_detail::cmd_verify(c, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DimensionError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace gqc

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

// JSON problem files.
//
// Matrices are objects {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}.
// A bare number is accepted for a real entry; the strings "NaN", "Infinity"
// and "-Infinity" are read as the corresponding values so that they can be
// rejected with the entry index. Time grids are either arrays or
// {"start": a, "stop": b, "n": k}.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gqc/core.hpp"
#include "gqc/dilation.hpp"
#include "gqc/gksl.hpp"
#include "gqc/intrinsic.hpp"

namespace gqc {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// primitives

namespace io_detail {

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline double number(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "NaN" || s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity" || s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ValidationError(field, "expected a number");
}

inline double finite_number(const json& j, const std::string& field) {
  const double v = number(j, field);
  if (!std::isfinite(v)) throw ValidationError(field, "non-finite value");
  return v;
}

inline int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ValidationError(field, "expected an integer");
  return j.get<int>();
}

}  // namespace io_detail

inline CMatrix parse_matrix(const json& j, const std::string& field) {
  using namespace io_detail;
  const int rows = integer(require(j, "rows", field), join(field, "rows"));
  const int cols = integer(require(j, "cols", field), join(field, "cols"));
  if (rows < 1 || cols < 1) throw ValidationError(field, "dimensions must be positive");
  const json& data = require(j, "data", field);
  if (!data.is_array() || static_cast<int>(data.size()) != rows)
    throw ValidationError(join(field, "data"), "expected " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = data[static_cast<std::size_t>(r)];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ValidationError(rf, "expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      const std::string ef = rf + "[" + std::to_string(c) + "]";
      if (e.is_array()) {
        if (e.size() != 2) throw ValidationError(ef, "expected [re, im]");
        m(r, c) = cplx(number(e[0], ef), number(e[1], ef));
      } else {
        m(r, c) = cplx(number(e, ef), 0.0);
      }
    }
  }
  check_finite(m, field);
  return m;
}

inline json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline HermitianOperator parse_hermitian(const json& j, const std::string& field,
                                         const ToleranceConfig& tol) {
  return HermitianOperator(parse_matrix(j, field), tol, field);
}

inline DensityOperator parse_density(const json& j, const std::string& field,
                                     const ToleranceConfig& tol) {
  return DensityOperator(parse_matrix(j, field), tol, field);
}

inline std::vector<double> parse_t_grid(const json& j, const std::string& field) {
  using namespace io_detail;
  std::vector<double> out;
  if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k)
      out.push_back(finite_number(j[k], field + "[" + std::to_string(k) + "]"));
  } else if (j.is_object()) {
    const double a = finite_number(require(j, "start", field), join(field, "start"));
    const double b = finite_number(require(j, "stop", field), join(field, "stop"));
    const int n = integer(require(j, "n", field), join(field, "n"));
    if (n < 1) throw ValidationError(join(field, "n"), "must be >= 1");
    for (int k = 0; k < n; ++k) out.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
  } else {
    throw ValidationError(field, "expected an array or {start, stop, n}");
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k] < 0.0) throw ValidationError(field, "times must be >= 0");
    if (k > 0 && !(out[k] > out[k - 1])) throw ValidationError(field, "must be strictly increasing");
  }
  if (out.empty()) throw ValidationError(field, "empty grid");
  return out;
}

/// "start:stop:n" as used on the command line.
inline std::vector<double> parse_t_grid_flag(const std::string& s) {
  std::stringstream ss(s);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
    throw ValidationError("--t-grid", "expected start:stop:n");
  try {
    return parse_t_grid(json{{"start", std::stod(a)}, {"stop", std::stod(b)}, {"n", std::stoi(n)}},
                        "--t-grid");
  } catch (const std::logic_error&) {
    throw ValidationError("--t-grid", "expected start:stop:n");
  }
}

inline void apply_tolerance(ToleranceConfig& tol, const std::string& name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("tolerances." + name, "must be > 0");
  if (name == "hermiticity") tol.hermiticity = v;
  else if (name == "psd") tol.psd = v;
  else if (name == "trace") tol.trace = v;
  else if (name == "unitarity") tol.unitarity = v;
  else if (name == "kraus_completeness") tol.kraus_completeness = v;
  else if (name == "channel_equality") tol.channel_equality = v;
  else if (name == "traceless") tol.traceless = v;
  else throw ValidationError("tolerances." + name, "unknown tolerance");
}

inline json tolerances_to_json(const ToleranceConfig& t) {
  return {{"hermiticity", t.hermiticity}, {"psd", t.psd},
          {"trace", t.trace},             {"unitarity", t.unitarity},
          {"kraus_completeness", t.kraus_completeness},
          {"channel_equality", t.channel_equality},
          {"traceless", t.traceless}};
}

// ---------------------------------------------------------------------------
// composite objects

inline Dilation parse_dilation(const json& j, const std::string& field, const ToleranceConfig& tol) {
  using namespace io_detail;
  const int d_S = integer(require(j, "d_S", field), join(field, "d_S"));
  const int d_E = integer(require(j, "d_E", field), join(field, "d_E"));
  DensityOperator rho = parse_density(require(j, "rho_E", field), join(field, "rho_E"), tol);
  HermitianOperator h = parse_hermitian(require(j, "h_tot", field), join(field, "h_tot"), tol);
  if (rho.dim() != d_E)
    throw ValidationError(join(field, "rho_E"), "dimension does not match d_E");
  if (h.dim() != d_S * d_E)
    throw ValidationError(join(field, "h_tot"), "dimension does not match d_S * d_E");
  return Dilation(d_S, d_E, std::move(rho), std::move(h));
}

inline json dilation_to_json(const Dilation& d) {
  return {{"d_S", d.d_S()},
          {"d_E", d.d_E()},
          {"rho_E", matrix_to_json(d.rho_E().matrix())},
          {"h_tot", matrix_to_json(d.h_tot().matrix())}};
}

inline BenchmarkSpec parse_benchmark(const json& j, const std::string& field) {
  using namespace io_detail;
  BenchmarkSpec b;
  const json& kind = require(j, "kind", field);
  if (!kind.is_string()) throw ValidationError(join(field, "kind"), "expected a string");
  try {
    b.kind = benchmark_kind_from_string(kind.get<std::string>());
  } catch (const ValidationError& e) {
    throw ValidationError(join(field, "kind"), e.what());
  }
  b.omega = j.contains("omega") ? finite_number(j["omega"], join(field, "omega")) : 1.0;
  const json& rates = require(j, "rates", field);
  if (rates.is_number()) {
    b.rates.push_back(finite_number(rates, join(field, "rates")));
  } else if (rates.is_array()) {
    for (std::size_t k = 0; k < rates.size(); ++k)
      b.rates.push_back(finite_number(rates[k], join(field, "rates") + "[" + std::to_string(k) + "]"));
  } else {
    throw ValidationError(join(field, "rates"), "expected a number or an array");
  }
  try {
    (void)benchmark_channel(b);
  } catch (const ValidationError& e) {
    throw ValidationError(join(field, e.field()), e.what());
  }
  return b;
}

inline BathModel parse_bath(const json& j, const std::string& field, const ToleranceConfig& tol) {
  using namespace io_detail;
  BathModel m;
  if (j.contains("beta")) m.beta = finite_number(j["beta"], join(field, "beta"));
  if (!(m.beta > 0.0)) throw ValidationError(join(field, "beta"), "must be > 0");
  if (j.contains("h_E")) {
    m.h_E = parse_hermitian(j["h_E"], join(field, "h_E"), tol).matrix();
    m.d_E = static_cast<int>(m.h_E.rows());
    m.rho_E.reset();
    m.bath_op = CMatrix::Zero(m.d_E, m.d_E);
    for (int k = 0; k + 1 < m.d_E; ++k) m.bath_op(k, k + 1) = 1.0;
  }
  if (j.contains("bath_op")) {
    m.bath_op = parse_matrix(j["bath_op"], join(field, "bath_op"));
    if (m.bath_op.rows() != m.d_E || m.bath_op.cols() != m.d_E)
      throw ValidationError(join(field, "bath_op"), "dimension does not match h_E");
    const double n = op_norm(m.bath_op);
    if (n > 1.0 + 1e-12)
      throw ValidationError(join(field, "bath_op"), "operator norm must be <= 1 (scaled by beta)");
  }
  if (j.contains("rho_E")) {
    const DensityOperator r = parse_density(j["rho_E"], join(field, "rho_E"), tol);
    if (r.dim() != m.d_E) throw ValidationError(join(field, "rho_E"), "dimension does not match h_E");
    m.rho_E = r.matrix();
  }
  return m;
}

inline GkslGenerator parse_generator(const json& j, const std::string& field, const ToleranceConfig& tol) {
  using namespace io_detail;
  HermitianOperator h = parse_hermitian(require(j, "h_S", field), join(field, "h_S"), tol);
  std::vector<CMatrix> ops;
  if (j.contains("lindblad_ops")) {
    const json& arr = j["lindblad_ops"];
    if (!arr.is_array()) throw ValidationError(join(field, "lindblad_ops"), "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k)
      ops.push_back(parse_matrix(arr[k], join(field, "lindblad_ops") + "[" + std::to_string(k) + "]"));
  }
  return GkslGenerator(std::move(h), std::move(ops));
}

inline StandardDilationSpec parse_environment(const json& j, const std::string& field,
                                              const ToleranceConfig& tol) {
  using namespace io_detail;
  StandardDilationSpec s{parse_hermitian(require(j, "h_E", field), join(field, "h_E"), tol), {}, 1.0,
                         std::nullopt};
  if (j.contains("beta")) s.beta = finite_number(j["beta"], join(field, "beta"));
  const json& arr = require(j, "bath_ops", field);
  if (!arr.is_array()) throw ValidationError(join(field, "bath_ops"), "expected an array");
  for (std::size_t k = 0; k < arr.size(); ++k)
    s.bath_ops.push_back(parse_matrix(arr[k], join(field, "bath_ops") + "[" + std::to_string(k) + "]"));
  if (j.contains("rho_E")) s.rho_E = parse_density(j["rho_E"], join(field, "rho_E"), tol);
  return s;
}

inline AdmissibleConstraints parse_constraints(const json& j, const std::string& field,
                                               const ToleranceConfig& tol) {
  using namespace io_detail;
  AdmissibleConstraints c;
  c.d_E_max = integer(require(j, "d_E_max", field), join(field, "d_E_max"));
  c.J_max = finite_number(require(j, "J_max", field), join(field, "J_max"));
  if (j.contains("channel_tol")) c.channel_tol = finite_number(j["channel_tol"], join(field, "channel_tol"));
  if (j.contains("E_max")) c.E_max = finite_number(j["E_max"], join(field, "E_max"));
  if (j.contains("h_E")) c.h_E = parse_hermitian(j["h_E"], join(field, "h_E"), tol);
  c.t_grid = parse_t_grid(require(j, "t_grid", field), join(field, "t_grid"));
  try {
    c.validate();
  } catch (const ValidationError& e) {
    std::string f = e.field();
    if (f.rfind("constraints.", 0) == 0) f = f.substr(12);
    throw ValidationError(join(field, f), std::string(e.what()).substr(e.field().size() + 2));
  }
  return c;
}

inline OptimizerOptions parse_optimizer(const json& j, const std::string& field,
                                        std::uint64_t default_seed = 0) {
  using namespace io_detail;
  OptimizerOptions o;
  o.seed = default_seed;
  if (!j.is_object()) throw ValidationError(field, "expected an object");
  if (j.contains("starts")) o.starts = integer(j["starts"], join(field, "starts"));
  if (j.contains("seed")) o.seed = static_cast<std::uint64_t>(integer(j["seed"], join(field, "seed")));
  if (j.contains("max_iters")) o.max_iters = integer(j["max_iters"], join(field, "max_iters"));
  if (j.contains("fd_step")) o.fd_step = finite_number(j["fd_step"], join(field, "fd_step"));
  if (j.contains("mu1")) o.mu1 = finite_number(j["mu1"], join(field, "mu1"));
  if (j.contains("mu2")) o.mu2 = finite_number(j["mu2"], join(field, "mu2"));
  if (j.contains("polish_tol")) o.polish_tol = finite_number(j["polish_tol"], join(field, "polish_tol"));
  if (j.contains("restore_iters")) o.restore_iters = integer(j["restore_iters"], join(field, "restore_iters"));
  if (j.contains("threads")) o.threads = integer(j["threads"], join(field, "threads"));
  if (o.restore_iters < 0) throw ValidationError(join(field, "restore_iters"), "must be >= 0");
  if (o.threads < 0) throw ValidationError(join(field, "threads"), "must be >= 0");
  if (o.starts < 1) throw ValidationError(join(field, "starts"), "must be >= 1");
  if (o.max_iters < 0) throw ValidationError(join(field, "max_iters"), "must be >= 0");
  if (!(o.fd_step > 0.0)) throw ValidationError(join(field, "fd_step"), "must be > 0");
  if (!(o.mu1 > 0.0)) throw ValidationError(join(field, "mu1"), "must be > 0");
  if (!(o.mu2 > 0.0)) throw ValidationError(join(field, "mu2"), "must be > 0");
  return o;
}

inline json optimizer_to_json(const OptimizerOptions& o) {
  return {{"starts", o.starts}, {"seed", o.seed},   {"max_iters", o.max_iters},
          {"fd_step", o.fd_step}, {"mu1", o.mu1},   {"mu2", o.mu2},
          {"polish_tol", o.polish_tol}, {"restore_iters", o.restore_iters}, {"threads", o.threads}};
}

inline json result_to_json(const OptimizationResult& r) {
  return {{"best_value", r.best_value},
          {"feasible", r.feasible},
          {"channel_residual", r.channel_residual},
          {"starts_used", r.starts_used},
          {"seed", r.seed},
          {"best_index", r.best_index},
          {"best_dilation", dilation_to_json(r.best_dilation)}};
}

// ---------------------------------------------------------------------------
// problem files

enum class ProblemKind { unitary, channel, noise, intrinsic, gksl_bound, benchmark, verify };

inline std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::unitary: return "unitary";
    case ProblemKind::channel: return "channel";
    case ProblemKind::noise: return "noise";
    case ProblemKind::intrinsic: return "intrinsic";
    case ProblemKind::gksl_bound: return "gksl_bound";
    case ProblemKind::benchmark: return "benchmark";
    case ProblemKind::verify: return "verify";
  }
  return "unknown";
}

inline ProblemKind problem_kind_from_string(const std::string& s) {
  for (auto k : {ProblemKind::unitary, ProblemKind::channel, ProblemKind::noise, ProblemKind::intrinsic,
                 ProblemKind::gksl_bound, ProblemKind::benchmark, ProblemKind::verify})
    if (to_string(k) == s) return k;
  if (s == "gksl-bound") return ProblemKind::gksl_bound;
  if (s == "bench") return ProblemKind::benchmark;
  throw ValidationError("kind", "unknown problem kind '" + s + "'");
}

struct UnitaryProblem {
  HermitianOperator h;
  std::optional<double> t;
};

struct ChannelProblem {
  Dilation dilation;
  HermitianOperator h_S;
  std::optional<std::vector<double>> t_grid;
};

struct IntrinsicProblem {
  HermitianOperator h_S;
  ChannelTarget target;
  AdmissibleConstraints constraints;
  std::optional<double> t_eval;
  OptimizerOptions optimizer;
  bool noise = false;
  std::vector<Dilation> extra_starts;
};

struct GkslBoundProblem {
  GkslGenerator generator;
  StandardDilationSpec environment;
  std::optional<AdmissibleConstraints> constraints;
  std::optional<std::vector<double>> t_grid;
};

struct BenchmarkProblem {
  std::vector<BenchmarkSpec> benchmarks;
  BathModel bath;
  std::optional<std::vector<double>> t_grid;
};

struct VerifyProblem {
  std::string suite = "all";
};

using ProblemPayload = std::variant<UnitaryProblem, ChannelProblem, IntrinsicProblem, GkslBoundProblem,
                                    BenchmarkProblem, VerifyProblem>;

struct ProblemSpec {
  ProblemKind kind = ProblemKind::verify;
  ProblemPayload payload = VerifyProblem{};
  ToleranceConfig tolerances;
  std::uint64_t seed = 0;
  json raw;
};

namespace io_detail {

inline ChannelTarget parse_target(const json& j, const std::string& field, const HermitianOperator& h_S,
                                  const std::vector<double>& grid, const ToleranceConfig& tol) {
  const json& type = require(j, "type", field);
  if (!type.is_string()) throw ValidationError(join(field, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "unitary") return target_from_unitary(h_S, grid);
  if (t == "dilation") {
    const Dilation d = parse_dilation(require(j, "dilation", field), join(field, "dilation"), tol);
    if (d.d_S() != h_S.dim()) throw ValidationError(join(field, "dilation.d_S"), "does not match h_S");
    const bool seed = !j.contains("use_as_seed") || j["use_as_seed"].get<bool>();
    return target_from_dilation(d, grid, seed);
  }
  if (t == "benchmark") {
    const BenchmarkSpec b = parse_benchmark(require(j, "benchmark", field), join(field, "benchmark"));
    const GkslGenerator g = benchmark_channel(b);
    if ((g.h_S().matrix() - h_S.matrix()).norm() > 1e-12)
      throw ValidationError(join(field, "benchmark.omega"), "benchmark h_S differs from h_S");
    const BathModel bath = j.contains("bath") ? parse_bath(j["bath"], join(field, "bath"), tol) : BathModel{};
    return target_from_standard_dilation(g, bath.spec_for(g.lindblad_ops().size()), grid);
  }
  if (t == "semigroup") {
    const GkslGenerator g = parse_generator(require(j, "generator", field), join(field, "generator"), tol);
    return target_from_generator(g, grid);
  }
  throw ValidationError(join(field, "type"), "unknown target type '" + t + "'");
}

}  // namespace io_detail

inline ProblemSpec parse_problem(const json& doc) {
  using namespace io_detail;
  ProblemSpec spec;
  spec.raw = doc;
  const json& kind = require(doc, "kind", "");
  if (!kind.is_string()) throw ValidationError("kind", "expected a string");
  spec.kind = problem_kind_from_string(kind.get<std::string>());
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      throw ValidationError("seed", "expected a non-negative integer");
    if (doc["seed"].get<long long>() < 0) throw ValidationError("seed", "must be >= 0");
    spec.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw ValidationError("tolerances", "expected an object");
    for (auto it = t.begin(); it != t.end(); ++it)
      apply_tolerance(spec.tolerances, it.key(), finite_number(it.value(), "tolerances." + it.key()));
  }
  const ToleranceConfig& tol = spec.tolerances;
  const json empty = json::object();
  const json& p = doc.contains("payload") ? doc["payload"] : empty;
  if (!p.is_object()) throw ValidationError("payload", "expected an object");

  auto opt_grid = [&](const char* key) -> std::optional<std::vector<double>> {
    if (!p.contains(key)) return std::nullopt;
    return parse_t_grid(p[key], key);
  };

  switch (spec.kind) {
    case ProblemKind::unitary: {
      UnitaryProblem u{parse_hermitian(require(p, "h", ""), "h", tol), std::nullopt};
      if (p.contains("t")) u.t = finite_number(p["t"], "t");
      if (u.h.dim() < 2) throw ValidationError("h", "dimension must be >= 2");
      spec.payload = std::move(u);
      break;
    }
    case ProblemKind::channel:
    case ProblemKind::noise: {
      Dilation d = parse_dilation(require(p, "dilation", ""), "dilation", tol);
      HermitianOperator h = parse_hermitian(require(p, "h_S", ""), "h_S", tol);
      if (h.dim() != d.d_S()) throw ValidationError("h_S", "dimension does not match dilation.d_S");
      if (spec.kind == ProblemKind::noise && d.d_S() < 2)
        throw ValidationError("dilation.d_S", "noise complexity needs d_S >= 2");
      if (d.d_tot() < 2) throw ValidationError("dilation", "d_S * d_E must be >= 2");
      spec.payload = ChannelProblem{std::move(d), std::move(h), opt_grid("t_grid")};
      break;
    }
    case ProblemKind::intrinsic: {
      HermitianOperator h = parse_hermitian(require(p, "h_S", ""), "h_S", tol);
      if (h.dim() < 2) throw ValidationError("h_S", "dimension must be >= 2");
      AdmissibleConstraints c = parse_constraints(require(p, "constraints", ""), "constraints", tol);
      ChannelTarget target = parse_target(require(p, "target", ""), "target", h, c.t_grid, tol);
      IntrinsicProblem ip{std::move(h), std::move(target), std::move(c), std::nullopt, {}, false, {}};
      if (p.contains("t_eval")) ip.t_eval = finite_number(p["t_eval"], "t_eval");
      ip.optimizer = p.contains("optimizer") ? parse_optimizer(p["optimizer"], "optimizer", spec.seed)
                                             : parse_optimizer(json::object(), "optimizer", spec.seed);
      if (p.contains("mode")) {
        const std::string m = p["mode"].is_string() ? p["mode"].get<std::string>() : "";
        if (m != "complexity" && m != "noise")
          throw ValidationError("mode", "expected \"complexity\" or \"noise\"");
        ip.noise = m == "noise";
      }
      if (p.contains("extra_starts")) {
        const json& arr = p["extra_starts"];
        if (!arr.is_array()) throw ValidationError("extra_starts", "expected an array");
        for (std::size_t k = 0; k < arr.size(); ++k)
          ip.extra_starts.push_back(parse_dilation(arr[k], "extra_starts[" + std::to_string(k) + "]", tol));
      }
      spec.payload = std::move(ip);
      break;
    }
    case ProblemKind::gksl_bound: {
      GkslGenerator g = p.contains("benchmark")
                            ? benchmark_channel(parse_benchmark(p["benchmark"], "benchmark"))
                            : parse_generator(require(p, "generator", ""), "generator", tol);
      StandardDilationSpec env =
          p.contains("environment")
              ? parse_environment(p["environment"], "environment", tol)
              : (p.contains("bath") ? parse_bath(p["bath"], "bath", tol) : BathModel{})
                    .spec_for(g.lindblad_ops().size());
      try {
        validate_spec(g, env);
      } catch (const ValidationError& e) {
        throw ValidationError("environment." + e.field(),
                              std::string(e.what()).substr(e.field().size() + 2));
      }
      std::optional<AdmissibleConstraints> c;
      if (p.contains("constraints")) c = parse_constraints(p["constraints"], "constraints", tol);
      spec.payload = GkslBoundProblem{std::move(g), std::move(env), std::move(c), opt_grid("t_grid")};
      break;
    }
    case ProblemKind::benchmark: {
      BenchmarkProblem b;
      const json& arr = require(p, "benchmarks", "");
      if (!arr.is_array()) throw ValidationError("benchmarks", "expected an array");
      for (std::size_t k = 0; k < arr.size(); ++k)
        b.benchmarks.push_back(parse_benchmark(arr[k], "benchmarks[" + std::to_string(k) + "]"));
      if (p.contains("bath")) b.bath = parse_bath(p["bath"], "bath", tol);
      b.t_grid = opt_grid("t_grid");
      spec.payload = std::move(b);
      break;
    }
    case ProblemKind::verify: {
      VerifyProblem v;
      if (p.contains("suite")) {
        if (!p["suite"].is_string()) throw ValidationError("suite", "expected a string");
        v.suite = p["suite"].get<std::string>();
      }
      spec.payload = v;
      break;
    }
  }
  return spec;
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError(path.string(), "cannot open file");
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string(), std::string("parse error: ") + e.what());
  }
}

/// Loads and fully validates a problem file; errors name the offending field.
inline ProblemSpec load_problem(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  try {
    return parse_problem(doc);
  } catch (const json::exception& e) {
    throw ValidationError("document", std::string("schema error: ") + e.what());
  }
}

}  // namespace gqc

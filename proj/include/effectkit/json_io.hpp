// Copyright 2026 The effectkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON file formats.
//
//   matrix       {"dim": d, "entries": [[re, im], ...]}   d^2 pairs, row-major
//   effect       {"label": s, "op": <matrix>}
//   POVM/effects {"dim": d, "effects": [<effect>, ...]}
//   Bloch        {"a": [ax, ay, az]}
//   valuation    {"dim": d, "entries": [{"label": s, "value": x}, ...]}
//   sample       {"povm": [labels], "counts": [...], "n": n, "seed": s}
//   contexts     {"effects_file": path, "contexts": [[labels]],
//                 "relations": [{"addends": [labels], "target": label|"I"}]}
//
// Floats are written with 17 significant digits; any JSON number is accepted
// on input.

#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "effectkit/effect.hpp"
#include "effectkit/nogo.hpp"
#include "effectkit/valuation.hpp"

namespace effectkit {

using Json = nlohmann::ordered_json;

/// Tolerances applied while loading and checking files; the CLI exposes each
/// one as `--tol name=value`.
struct Tolerances {
  double hermitian = kHermitianTol;
  double psd = kPsdTol;
  double effect = kEffectTol;
  double povm = kPovmTol;
  double relation = kRelationTol;
  double rank = 1e-10;
  double inconsistency = 1e-6;
};

// -- writer --------------------------------------------------------------------

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write_json(const Json& j, std::string& out, bool pretty, int depth) {
  const auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(2 * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write_json(it.value(), out, pretty, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += pretty && scalars ? ", " : ",";
        first = false;
        if (!scalars) newline(depth + 1);
        write_json(v, out, pretty, depth + 1);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

inline std::string dump_json(const Json& j, bool pretty = false) {
  std::string out;
  detail::write_json(j, out, pretty, 0);
  out += '\n';
  return out;
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

// -- field helpers -------------------------------------------------------------

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::Parse, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(Errc::Parse, std::string(what) + " is not a number");
  return j.get<double>();
}

inline std::uint64_t unsigned_integer(const Json& j, const char* what) {
  const bool negative = j.is_number_integer() && !j.is_number_unsigned() &&
                        j.get<std::int64_t>() < 0;
  if (!j.is_number_integer() || negative) {
    throw Error(Errc::Parse, std::string(what) + " is not a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

inline std::string string_value(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(Errc::Parse, std::string(what) + " is not a string");
  return j.get<std::string>();
}

inline std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::Parse, std::string(what) + " is not an array");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(string_value(v, what));
  return out;
}

}  // namespace detail

// -- matrices and effects --------------------------------------------------------

inline Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return Json{{"dim", static_cast<std::uint64_t>(m.rows())}, {"entries", std::move(entries)}};
}

inline Json to_json(const HermitianOperator& h) { return to_json(h.matrix()); }

inline Matrix matrix_from_json(const Json& j) {
  const auto d = detail::unsigned_integer(detail::field(j, "dim"), "dim");
  const auto& entries = detail::field(j, "entries");
  if (d < 1) throw Error(Errc::Parse, "dim must be at least 1");
  if (d > kDefaultMaxDim) {
    throw Error(Errc::InvalidArgument, "dim " + std::to_string(d) + " exceeds the cap " +
                                           std::to_string(kDefaultMaxDim));
  }
  if (!entries.is_array() || entries.size() != d * d) {
    throw Error(Errc::Parse, "entries must hold dim^2 = " + std::to_string(d * d) +
                                 " [re, im] pairs");
  }
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m(n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (!e.is_array() || e.size() != 2) throw Error(Errc::Parse, "entry is not [re, im]");
    m(static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) =
        Complex(detail::number(e[0], "re"), detail::number(e[1], "im"));
  }
  return m;
}

inline HermitianOperator hermitian_from_json(const Json& j, double tol = kHermitianTol) {
  return HermitianOperator(matrix_from_json(j), tol);
}

inline Json to_json(const Effect& e) {
  return Json{{"label", e.label()}, {"op", to_json(e.op())}};
}

inline Effect effect_from_json(const Json& j, const Tolerances& tol = {}) {
  return Effect(hermitian_from_json(detail::field(j, "op"), tol.hermitian),
                detail::string_value(detail::field(j, "label"), "label"), tol.effect);
}

inline Json effects_to_json(const std::vector<Effect>& effects) {
  Json list = Json::array();
  for (const auto& e : effects) list.push_back(to_json(e));
  const std::uint64_t d = effects.empty() ? 0 : effects.front().dim();
  return Json{{"dim", d}, {"effects", std::move(list)}};
}

inline Json to_json(const Povm& p) { return effects_to_json(p.effects()); }

/// Reads the effect list of a POVM/effects file without requiring sum = I.
inline std::vector<Effect> effects_from_json(const Json& j, const Tolerances& tol = {}) {
  const auto& list = detail::field(j, "effects");
  if (!list.is_array()) throw Error(Errc::Parse, "effects is not an array");
  std::vector<Effect> out;
  for (const auto& e : list) out.push_back(effect_from_json(e, tol));
  if (j.contains("dim")) {
    const auto d = detail::unsigned_integer(j.at("dim"), "dim");
    for (const auto& e : out) {
      if (e.dim() != d) {
        throw Error(Errc::DimMismatch, "effect '" + e.label() + "' has dim " +
                                           std::to_string(e.dim()) + ", file says " +
                                           std::to_string(d));
      }
    }
  }
  return out;
}

inline Povm povm_from_json(const Json& j, const Tolerances& tol = {}) {
  return Povm(effects_from_json(j, tol), tol.povm);
}

inline Json to_json(const BlochVector& v) { return Json{{"a", {v.a[0], v.a[1], v.a[2]}}}; }

inline BlochVector bloch_from_json(const Json& j) {
  const auto& a = detail::field(j, "a");
  if (!a.is_array() || a.size() != 3) throw Error(Errc::Parse, "a must have 3 components");
  return {{detail::number(a[0], "a"), detail::number(a[1], "a"), detail::number(a[2], "a")}};
}

/// A state file is a bare matrix or any object with a "state" matrix field
/// (the output of `reconstruct`).
inline HermitianOperator state_from_json(const Json& j, const Tolerances& tol = {}) {
  if (j.is_object() && j.contains("state")) {
    return hermitian_from_json(j.at("state"), tol.hermitian);
  }
  return hermitian_from_json(j, tol.hermitian);
}

// -- valuations, samples, reports ----------------------------------------------

inline Json to_json(const ValuationTable& v) {
  Json entries = Json::array();
  for (const auto& e : v.entries()) {
    Json row{{"label", e.effect.label()}, {"value", e.value}};
    if (e.std_error) row["std_error"] = *e.std_error;
    entries.push_back(std::move(row));
  }
  return Json{{"dim", static_cast<std::uint64_t>(v.dim())}, {"entries", std::move(entries)}};
}

/// Label -> value pairs in file order; operators are resolved separately.
inline std::vector<std::pair<std::string, double>> valuation_values_from_json(const Json& j) {
  const auto& entries = detail::field(j, "entries");
  if (!entries.is_array()) throw Error(Errc::Parse, "entries is not an array");
  std::vector<std::pair<std::string, double>> out;
  for (const auto& e : entries) {
    out.emplace_back(detail::string_value(detail::field(e, "label"), "label"),
                     detail::number(detail::field(e, "value"), "value"));
  }
  return out;
}

/// Builds a table by resolving every entry's label against `effects`.
inline ValuationTable valuation_from_json(const Json& j, const std::vector<Effect>& effects) {
  const auto values = valuation_values_from_json(j);
  std::size_t d = effects.empty() ? 0 : effects.front().dim();
  if (j.contains("dim")) d = detail::unsigned_integer(j.at("dim"), "dim");
  ValuationTable table(d);
  for (const auto& [label, value] : values) {
    const auto it = std::find_if(effects.begin(), effects.end(),
                                 [&](const Effect& e) { return e.label() == label; });
    if (it == effects.end()) throw Error(Errc::UnknownLabel, label);
    table.add(*it, value);
  }
  return table;
}

inline Json to_json(const SampleRecord& r) {
  return Json{{"povm", r.povm}, {"counts", r.counts}, {"n", r.n}, {"seed", r.seed}};
}

inline SampleRecord sample_from_json(const Json& j) {
  SampleRecord r;
  r.povm = detail::string_list(detail::field(j, "povm"), "povm");
  const auto& counts = detail::field(j, "counts");
  if (!counts.is_array()) throw Error(Errc::Parse, "counts is not an array");
  for (const auto& c : counts) r.counts.push_back(detail::unsigned_integer(c, "count"));
  r.n = detail::unsigned_integer(detail::field(j, "n"), "n");
  r.seed = detail::unsigned_integer(detail::field(j, "seed"), "seed");
  return r;
}

inline Json to_json(const ReconstructionDiagnostics& d) {
  return Json{{"residual", d.residual},
              {"trace_dev", d.trace_dev},
              {"min_eig", d.min_eig},
              {"projected", d.projected},
              {"rank", static_cast<std::uint64_t>(d.rank)},
              {"deficiency", static_cast<std::uint64_t>(d.deficiency)},
              {"unprojected",
               {{"residual", d.raw_residual},
                {"trace_dev", d.raw_trace_dev},
                {"min_eig", d.raw_min_eig}}}};
}

inline Json to_json(const AxiomReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"axiom", v.axiom},
                          {"relation", v.relation},
                          {"lhs", v.lhs},
                          {"rhs", v.rhs},
                          {"residual", v.residual}});
  }
  return Json{{"p1_ok", r.p1_ok},
              {"p2_ok", r.p2_ok},
              {"p3_ok", r.p3_ok},
              {"violations", std::move(violations)},
              {"ill_posed", r.ill_posed}};
}

inline std::vector<AdditivityRelation> relations_from_json(const Json& list) {
  if (!list.is_array()) throw Error(Errc::Parse, "relations is not an array");
  std::vector<AdditivityRelation> out;
  for (const auto& r : list) {
    out.push_back({detail::string_list(detail::field(r, "addends"), "addends"),
                   detail::string_value(detail::field(r, "target"), "target")});
  }
  return out;
}

// -- no-go -----------------------------------------------------------------------

inline Json to_json(const Witness2D& w) {
  const auto vec = [](const BlochVector& v) { return Json::array({v.a[0], v.a[1], v.a[2]}); };
  return Json{{"n", vec(w.n)},
              {"m", vec(w.m)},
              {"lambda", w.lambda},
              {"c", vec(w.c)},
              {"c_norm", w.c_norm},
              {"mu", w.mu},
              {"mu_eigensolver", w.mu_eigensolver},
              {"certifies", w.certifies()},
              {"P", to_json(w.P)},
              {"Q", to_json(w.Q)},
              {"E", to_json(w.E)},
              {"R", to_json(w.R)},
              {"Rprime", to_json(w.Rprime)},
              {"violated_relation", w.violated_relation}};
}

/// Parses a contexts file. Effects come from "effects_file" (resolved against
/// `base_dir`) or an inline "effects" list. Optional keys: "discover" (bool)
/// and per-relation "coefficients".
inline ContextSpec context_spec_from_json(const Json& j,
                                          const std::filesystem::path& base_dir = {},
                                          const Tolerances& tol = {}) {
  ContextSpec spec;
  if (j.contains("effects_file")) {
    std::filesystem::path p = detail::string_value(j.at("effects_file"), "effects_file");
    if (p.is_relative()) p = base_dir / p;
    spec.effects = effects_from_json(read_json_file(p), tol);
  } else if (j.contains("effects")) {
    spec.effects = effects_from_json(j, tol);
  } else {
    throw Error(Errc::Parse, "contexts file needs \"effects_file\" or \"effects\"");
  }
  if (j.contains("contexts")) {
    const auto& ctx = j.at("contexts");
    if (!ctx.is_array()) throw Error(Errc::Parse, "contexts is not an array");
    for (const auto& c : ctx) spec.contexts.push_back(detail::string_list(c, "context"));
  }
  if (j.contains("relations")) {
    const auto& rels = j.at("relations");
    if (!rels.is_array()) throw Error(Errc::Parse, "relations is not an array");
    for (const auto& r : rels) {
      RelationSpec rel{detail::string_list(detail::field(r, "addends"), "addends"),
                       detail::string_value(detail::field(r, "target"), "target"),
                       {}};
      if (r.contains("coefficients")) {
        for (const auto& c : r.at("coefficients")) {
          rel.coefficients.push_back(detail::number(c, "coefficient"));
        }
      }
      spec.relations.push_back(std::move(rel));
    }
  }
  if (j.contains("discover")) {
    if (!j.at("discover").is_boolean()) throw Error(Errc::Parse, "discover is not a boolean");
    spec.discover = j.at("discover").get<bool>();
  }
  return spec;
}

inline Json context_set_to_json(const ContextSet& cs, const std::string& effects_file) {
  Json rels = Json::array();
  for (const auto& r : cs.relations()) {
    rels.push_back({{"addends", r.addends}, {"target", r.target}});
  }
  return Json{{"effects_file", effects_file}, {"contexts", cs.contexts()}, {"relations", rels}};
}

inline constexpr const char* kToolkitVersion =
#ifdef EFFECTKIT_VERSION
    EFFECTKIT_VERSION;
#else
    "0.1.0";
#endif

inline Json certificate_to_json(const SearchResult& r, const ContextSet& cs) {
  Json assignments = Json::array();
  for (const auto& a : r.assignments) {
    Json row = Json::object();
    for (std::size_t k = 0; k < a.size(); ++k) row[r.labels[k]] = a[k];
    assignments.push_back(std::move(row));
  }
  Json core = Json::array();
  for (auto i : r.core) {
    Json c{{"index", static_cast<std::uint64_t>(i)},
           {"kind", i < cs.contexts().size() ? "context" : "relation"},
           {"labels", detail::constraint_labels(cs, i)},
           {"description", cs.describe_constraint(i)}};
    core.push_back(std::move(c));
  }
  return Json{{"status", to_string(r.status)},
              {"assignments", std::move(assignments)},
              {"total_solutions", r.total_solutions},
              {"count_exact", r.count_exact},
              {"core", std::move(core)},
              {"core_minimal", r.core_minimal},
              {"nodes", r.nodes_explored},
              {"toolkit_version", kToolkitVersion}};
}

}  // namespace effectkit

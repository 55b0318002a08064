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

// Command-line frontend. `run` is the whole program minus process setup, so
// tests can drive it in-process.
//
// Exit codes: 0 success/answered, 1 I/O or parse error, 2 validation error,
// 3 deficient frame, 4 inconsistent values, 5 certificate verification failure.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "effectkit/json_io.hpp"
#include "effectkit/nogo.hpp"
#include "effectkit/random.hpp"
#include "effectkit/valuation.hpp"

namespace effectkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIoParse = 1,
  kExitValidation = 2,
  kExitFrame = 3,
  kExitInconsistent = 4,
  kExitVerification = 5,
};

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Io:
    case Errc::Parse:
      return kExitIoParse;
    case Errc::FrameDeficient:
      return kExitFrame;
    case Errc::ValuesInconsistent:
      return kExitInconsistent;
    default:
      return kExitValidation;
  }
}

inline constexpr std::uint64_t kDefaultSeed = 0;

struct GlobalOptions {
  std::string out;
  bool pretty = false;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> tol_overrides;
  Tolerances tol;
};

namespace detail {

inline void apply_tolerance(Tolerances& tol, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw Error(Errc::InvalidArgument, "--tol expects name=value, got '" + spec + "'");
  }
  const std::string name = spec.substr(0, eq);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(spec.substr(eq + 1), &used);
    if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "bad tolerance value in '" + spec + "'");
  }
  if (!(value >= 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be >= 0");
  if (name == "hermitian") tol.hermitian = value;
  else if (name == "psd") tol.psd = value;
  else if (name == "effect") tol.effect = value;
  else if (name == "povm") tol.povm = value;
  else if (name == "relation") tol.relation = value;
  else if (name == "rank") tol.rank = value;
  else if (name == "inconsistency") tol.inconsistency = value;
  else throw Error(Errc::InvalidArgument, "unknown tolerance '" + name + "'");
}

inline BlochVector parse_vector3(const std::string& text, const char* flag) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, std::string(flag) + ": bad component '" + item + "'");
    }
  }
  if (parts.size() != 3) {
    throw Error(Errc::InvalidArgument, std::string(flag) + " needs three components x,y,z");
  }
  return {{parts[0], parts[1], parts[2]}};
}

inline Json error_json(const Error& e) {
  return Json{{"valid", false}, {"error", to_string(e.code())}, {"message", e.what()}};
}

/// Effect report that carries the spectrum even when validation fails.
inline Json effect_report(const Json& j, const Tolerances& tol, bool& valid) {
  const auto label = effectkit::detail::string_value(effectkit::detail::field(j, "label"), "label");
  const HermitianOperator op = hermitian_from_json(effectkit::detail::field(j, "op"), tol.hermitian);
  const auto eig = eig_hermitian(op);
  Json report{{"label", label},
              {"min_eig", eig.eigenvalues.minCoeff()},
              {"max_eig", eig.eigenvalues.maxCoeff()},
              {"hermiticity_deviation", op.input_deviation()}};
  try {
    Effect e(op, label, tol.effect);
    report["valid"] = true;
  } catch (const Error& err) {
    report["valid"] = false;
    report["error"] = to_string(err.code());
    report["message"] = err.what();
    valid = false;
  }
  return report;
}

}  // namespace detail

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"effectkit: effects, valuations, state reconstruction and no-go certificates"};
    app.name("effectkit");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kToolkitVersion));

    app.add_option("--out", g_.out, "Write the JSON payload to this file instead of stdout");
    app.add_flag("--pretty", g_.pretty, "Indent JSON output");
    app.add_option("--seed", g_.seed, "Random seed for sample/gen")->capture_default_str();
    app.add_option("--tol", g_.tol_overrides,
                   "Tolerance override name=value; names: hermitian (1e-10), psd (1e-9), "
                   "effect (1e-9), povm (1e-8, per unit dim), relation (1e-8), rank (1e-10, "
                   "relative), inconsistency (1e-6)")
        ->take_all();

    // validate
    std::string validate_path, validate_kind, validate_effects, validate_relations;
    std::vector<std::string> validate_povms;
    auto* validate = app.add_subcommand("validate", "Check an effect, POVM, state or valuation file");
    validate->add_option("path", validate_path, "Input file")->required();
    validate->add_option("--kind", validate_kind, "effect|povm|state|valuation")
        ->required()
        ->check(CLI::IsMember({"effect", "povm", "state", "valuation"}));
    validate->add_option("--effects", validate_effects, "Effects file resolving valuation labels");
    validate->add_option("--povm", validate_povms, "POVM file whose outcomes must sum to 1");
    validate->add_option("--relations", validate_relations,
                         "File with {\"relations\": [...]} additivity claims");

    // born
    std::string born_state, born_povm;
    auto* born_cmd = app.add_subcommand("born", "Outcome probabilities tr[rho E_i]");
    born_cmd->add_option("state", born_state, "State file")->required();
    born_cmd->add_option("povm", born_povm, "POVM file")->required();

    // reconstruct
    std::string rec_frame, rec_values;
    bool rec_min_norm = false, rec_project = false;
    auto* reconstruct = app.add_subcommand("reconstruct", "Recover rho from valuation data on a frame");
    reconstruct->add_option("frame", rec_frame, "Effects file")->required();
    reconstruct->add_option("values", rec_values, "Valuation table or sample record")->required();
    reconstruct->add_flag("--min-norm", rec_min_norm, "Accept non-spanning frames");
    reconstruct->add_flag("--project-psd", rec_project, "Project onto density operators");

    // nogo2d
    std::string nogo_n, nogo_m;
    double nogo_lambda = 0.5;
    auto* nogo = app.add_subcommand("nogo2d", "Qubit witness against linear extension");
    nogo->add_option("--n", nogo_n, "Unit Bloch vector x,y,z")->required();
    nogo->add_option("--m", nogo_m, "Unit Bloch vector x,y,z")->required();
    nogo->add_option("--lambda", nogo_lambda, "Mixing weight in (0, 1)")->capture_default_str();

    // dfsearch
    std::string df_path;
    std::size_t df_max = SearchOptions{}.max_solutions;
    std::uint64_t df_budget = SearchOptions{}.node_budget;
    bool df_discover = false;
    auto* dfsearch = app.add_subcommand("dfsearch", "Search for dispersion-free valuations");
    dfsearch->add_option("contexts", df_path, "Context set file")->required();
    dfsearch->add_option("--max-solutions", df_max, "Assignments to report")->capture_default_str();
    dfsearch->add_option("--budget", df_budget, "Search node budget")->capture_default_str();
    dfsearch->add_flag("--discover", df_discover, "Add sum relations found among pairs/triples");

    // sample
    std::string sample_state, sample_povm;
    std::uint64_t sample_shots = 1000;
    auto* sample = app.add_subcommand("sample", "Draw measurement outcomes");
    sample->add_option("state", sample_state, "State file")->required();
    sample->add_option("povm", sample_povm, "POVM file")->required();
    sample->add_option("--shots", sample_shots, "Number of shots")->capture_default_str();

    // gen
    std::string gen_kind;
    std::size_t gen_dim = 2;
    std::optional<std::size_t> gen_outcomes;
    auto* gen = app.add_subcommand("gen", "Random effect, POVM or state");
    gen->add_option("--kind", gen_kind, "effect|povm|state")
        ->required()
        ->check(CLI::IsMember({"effect", "povm", "state"}));
    gen->add_option("--dim", gen_dim, "Hilbert-space dimension")->capture_default_str();
    gen->add_option("--outcomes", gen_outcomes, "POVM outcomes (default dim^2)");

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::CallForVersion&) {
      out_ << kToolkitVersion << "\n";
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitValidation;
    }

    try {
      for (const auto& spec : g_.tol_overrides) detail::apply_tolerance(g_.tol, spec);
      if (*validate) {
        return cmd_validate(validate_path, validate_kind, validate_effects, validate_povms,
                            validate_relations);
      }
      if (*born_cmd) return cmd_born(born_state, born_povm);
      if (*reconstruct) return cmd_reconstruct(rec_frame, rec_values, rec_min_norm, rec_project);
      if (*nogo) return cmd_nogo2d(nogo_n, nogo_m, nogo_lambda);
      if (*dfsearch) return cmd_dfsearch(df_path, df_max, df_budget, df_discover);
      if (*sample) return cmd_sample(sample_state, sample_povm, sample_shots);
      if (*gen) return cmd_gen(gen_kind, gen_dim, gen_outcomes);
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return exit_code_for(e.code());
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitIoParse;
    }
    return kExitValidation;
  }

 private:
  void emit(const Json& payload) {
    const std::string text = dump_json(payload, g_.pretty);
    if (g_.out.empty()) {
      out_ << text;
    } else {
      write_text_file(g_.out, text);
    }
  }

  int cmd_validate(const std::string& path, const std::string& kind,
                   const std::string& effects_path, const std::vector<std::string>& povm_paths,
                   const std::string& relations_path) {
    const Json input = read_json_file(path);
    const Tolerances& tol = g_.tol;
    Json report{{"kind", kind}};
    bool valid = true;

    try {
      if (kind == "effect") {
        const Json single = detail::effect_report(input, tol, valid);
        for (const auto& [k, v] : single.items()) report[k] = v;
      } else if (kind == "povm") {
        const auto& list = effectkit::detail::field(input, "effects");
        if (!list.is_array()) throw Error(Errc::Parse, "effects is not an array");
        Json effects = Json::array();
        for (const auto& e : list) effects.push_back(detail::effect_report(e, tol, valid));
        report["outcomes"] = list.size();
        if (valid) {
          try {
            const Povm p = povm_from_json(input, tol);
            report["sum_deviation"] = p.sum_deviation();
          } catch (const Error& e) {
            valid = false;
            report["error"] = to_string(e.code());
            report["message"] = e.what();
          }
        }
        report["effects"] = std::move(effects);
      } else if (kind == "state") {
        const HermitianOperator op = state_from_json(input, tol);
        report["trace"] = op.matrix().trace().real();
        report["min_eig"] = min_eigenvalue(op);
        report["hermiticity_deviation"] = op.input_deviation();
        try {
          DensityOperator rho(op, tol.psd);
        } catch (const Error& e) {
          valid = false;
          report["error"] = to_string(e.code());
          report["message"] = e.what();
        }
      } else {
        if (effects_path.empty()) {
          throw Error(Errc::InvalidArgument, "--kind valuation needs --effects");
        }
        const auto effects = effects_from_json(read_json_file(effects_path), tol);
        const ValuationTable table = valuation_from_json(input, effects);
        std::vector<AdditivityRelation> relations;
        if (!relations_path.empty()) {
          relations = relations_from_json(
              effectkit::detail::field(read_json_file(relations_path), "relations"));
        }
        const AxiomReport gpm = check_gpm(table, relations, tol.relation);
        report["gpm"] = to_json(gpm);
        valid = gpm.ok();
        if (!povm_paths.empty()) {
          std::vector<Povm> povms;
          for (const auto& p : povm_paths) povms.push_back(povm_from_json(read_json_file(p), tol));
          const AxiomReport ev = check_effect_valuation(table, povms, tol.relation);
          report["effect_valuation"] = to_json(ev);
          valid = valid && ev.ok();
        }
        report["warnings"] = table.warnings();
      }
    } catch (const Error& e) {
      if (exit_code_for(e.code()) == kExitIoParse) throw;
      valid = false;
      report["error"] = to_string(e.code());
      report["message"] = e.what();
    }
    report["valid"] = valid;
    emit(report);
    if (!valid) err_ << "invalid " << kind << ": see report\n";
    return valid ? kExitOk : kExitValidation;
  }

  int cmd_born(const std::string& state_path, const std::string& povm_path) {
    const DensityOperator rho(state_from_json(read_json_file(state_path), g_.tol), g_.tol.psd);
    const Povm povm = povm_from_json(read_json_file(povm_path), g_.tol);
    if (rho.dim() != povm.dim()) {
      throw Error(Errc::DimMismatch, "state dim " + std::to_string(rho.dim()) +
                                         " vs POVM dim " + std::to_string(povm.dim()));
    }
    Json probs = Json::array();
    Json entries = Json::array();
    double sum = 0.0;
    for (const auto& e : povm.effects()) {
      const double p = born(rho, e);
      sum += p;
      probs.push_back(p);
      entries.push_back({{"label", e.label()}, {"value", p}});
    }
    emit(Json{{"probs", std::move(probs)},
              {"sum", sum},
              {"dim", static_cast<std::uint64_t>(rho.dim())},
              {"entries", std::move(entries)}});
    return kExitOk;
  }

  int cmd_reconstruct(const std::string& frame_path, const std::string& values_path,
                      bool min_norm, bool project) {
    const auto frame = effects_from_json(read_json_file(frame_path), g_.tol);
    const Json values_json = read_json_file(values_path);

    std::vector<double> values;
    if (values_json.is_object() && values_json.contains("counts")) {
      const auto record = sample_from_json(values_json);
      const auto table = estimate_valuation(record, Povm(frame, g_.tol.povm));
      for (const auto& e : table.entries()) values.push_back(e.value);
    } else {
      const auto pairs = valuation_values_from_json(values_json);
      for (const auto& [label, v] : pairs) {
        if (std::none_of(frame.begin(), frame.end(),
                         [&](const Effect& e) { return e.label() == label; })) {
          throw Error(Errc::UnknownLabel, "'" + label + "' is not in the frame");
        }
      }
      for (const auto& e : frame) {
        const auto it = std::find_if(pairs.begin(), pairs.end(),
                                     [&](const auto& p) { return p.first == e.label(); });
        if (it == pairs.end()) throw Error(Errc::UnknownLabel, "no value for '" + e.label() + "'");
        values.push_back(it->second);
      }
    }

    ReconstructionOptions opts;
    opts.min_norm = min_norm;
    opts.project_psd = project;
    opts.rank_cutoff = g_.tol.rank;
    opts.inconsistency_tol = g_.tol.inconsistency;
    const auto rec = reconstruct_density(frame, values, opts);
    emit(Json{{"state", to_json(rec.state.op())}, {"diagnostics", to_json(rec.diagnostics)}});
    return kExitOk;
  }

  int cmd_nogo2d(const std::string& n, const std::string& m, double lambda) {
    const auto w = witness_2d(detail::parse_vector3(n, "--n"), detail::parse_vector3(m, "--m"),
                              lambda);
    emit(to_json(w));
    return kExitOk;
  }

  int cmd_dfsearch(const std::string& path, std::size_t max_solutions, std::uint64_t budget,
                   bool discover) {
    const Json input = read_json_file(path);
    auto spec = context_spec_from_json(input, std::filesystem::path(path).parent_path(), g_.tol);
    spec.discover = spec.discover || discover;
    const ContextSet cs = build_context_set(spec);
    for (const auto& w : cs.warnings()) err_ << "warning: " << w << "\n";
    const auto result = search_dispersion_free(cs, {max_solutions, budget});
    if (!verify_certificate(result, cs)) {
      err_ << "internal error: search result failed independent verification\n";
      return kExitVerification;
    }
    emit(certificate_to_json(result, cs));
    return kExitOk;
  }

  int cmd_sample(const std::string& state_path, const std::string& povm_path,
                 std::uint64_t shots) {
    if (shots < 1) throw Error(Errc::InvalidArgument, "--shots must be at least 1");
    const DensityOperator rho(state_from_json(read_json_file(state_path), g_.tol), g_.tol.psd);
    const Povm povm = povm_from_json(read_json_file(povm_path), g_.tol);
    emit(to_json(sample_outcomes(rho, povm, shots, g_.seed)));
    return kExitOk;
  }

  int cmd_gen(const std::string& kind, std::size_t dim, std::optional<std::size_t> outcomes) {
    if (dim < 1 || dim > kDefaultMaxDim) {
      throw Error(Errc::InvalidArgument, "--dim must be in [1, " +
                                             std::to_string(kDefaultMaxDim) + "]");
    }
    Rng rng(g_.seed);
    if (kind == "effect") {
      emit(to_json(random_effect(dim, rng, "E")));
    } else if (kind == "state") {
      emit(to_json(random_density_matrix(dim, rng)));
    } else {
      const std::size_t k = outcomes.value_or(dim * dim);
      if (k < 1) throw Error(Errc::InvalidArgument, "--outcomes must be at least 1");
      emit(to_json(random_povm(dim, k, rng)));
    }
    return kExitOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  GlobalOptions g_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return Runner(out, err).run(args);
}

}  // namespace effectkit::cli

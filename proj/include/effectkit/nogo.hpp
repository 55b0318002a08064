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

// No-go certificates for dispersion-free ({0,1}-valued) valuations.
//
// Two routes:
//  * witness_2d: on a qubit, two rank-1 projections P, Q valued 0 force any
//    linear extension to give E = lambda P + (1 - lambda) Q the value 0,
//    while E's spectral decomposition mu R + (1 - mu) R' with 0 < mu < 1
//    forces v(E) in {mu, 1 - mu}. Closed form, real coefficients.
//  * search_dispersion_free: exhaustive 0/1 search over a finite set of
//    effects with POVM contexts (values sum to 1) and integer sum relations,
//    returning all solutions or a minimal unsatisfiable core.
// verify_certificate re-checks either outcome without using the search code.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "effectkit/effect.hpp"
#include "effectkit/valuation.hpp"

namespace effectkit {

// -- qubit witness -------------------------------------------------------------

struct Witness2D {
  BlochVector n;
  BlochVector m;
  double lambda = 0.0;
  BlochVector c;  // lambda n + (1 - lambda) m
  double c_norm = 0.0;
  double mu = 0.0;              // (1 + |c|) / 2
  double mu_eigensolver = 0.0;  // top eigenvalue of E
  Effect P;
  Effect Q;
  Effect E;
  Effect R;
  Effect Rprime;
  std::string violated_relation;

  /// 0 < mu < 1 and both routes to mu agree.
  bool certifies(double tol = 1e-9) const {
    return mu > 0.0 && mu < 1.0 && std::abs(mu - mu_eigensolver) <= tol;
  }
};

inline constexpr double kUnitTol = 1e-9;
inline constexpr double kMinAngle = 1e-6;

inline Witness2D witness_2d(const BlochVector& n, const BlochVector& m, double lambda) {
  if (std::abs(n.norm() - 1.0) > kUnitTol || std::abs(m.norm() - 1.0) > kUnitTol) {
    throw Error(Errc::NotUnitVectors, "|n| = " + std::to_string(n.norm()) +
                                          ", |m| = " + std::to_string(m.norm()));
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(Errc::DegenerateLambda, "lambda = " + std::to_string(lambda) +
                                            " must lie strictly inside (0, 1)");
  }
  const BlochVector cross{{n[1] * m[2] - n[2] * m[1], n[2] * m[0] - n[0] * m[2],
                           n[0] * m[1] - n[1] * m[0]}};
  const double angle = std::atan2(cross.norm(), dot(n, m));
  if (angle <= kMinAngle) {
    throw Error(Errc::ParallelVectors, "n and m are parallel (angle " +
                                           std::to_string(angle) + " rad)");
  }

  const BlochVector c = lambda * n + (1.0 - lambda) * m;
  const double c_norm = c.norm();
  // mu = (1 + |c|)/2 has to stay resolvably below 1.
  if (1.0 - c_norm <= kUnitTol) {
    throw Error(Errc::DegenerateLambda,
                "|c| = 1 - " + std::to_string(1.0 - c_norm) +
                    ": E is numerically a projection, no contradiction to certify");
  }

  Effect P(bloch_to_operator(n), "P");
  Effect Q(bloch_to_operator(m), "Q");
  Effect E(lambda * P.op() + (1.0 - lambda) * Q.op(), "E");
  const double mu = 0.5 * (1.0 + c_norm);
  const double mu_eig = max_eigenvalue(E.op());
  if (std::abs(mu - mu_eig) > 1e-9) {
    throw Error(Errc::ConvergenceFailure, "closed-form mu " + std::to_string(mu) +
                                              " vs eigensolver " + std::to_string(mu_eig));
  }

  // R projects on the top eigenvector; for c = 0 every split is spectral.
  const BlochVector r = c_norm > 1e-12 ? (1.0 / c_norm) * c : n;
  Effect R(bloch_to_operator(r), "R");
  Effect Rprime(bloch_to_operator(-r), "R'");

  Witness2D w{n,       m,      lambda, c, c_norm, mu, mu_eig, std::move(P), std::move(Q),
              std::move(E), std::move(R), std::move(Rprime), {}};
  w.violated_relation =
      "v(E) = lambda v(P) + (1 - lambda) v(Q) = 0 vs v(E) in {mu, 1 - mu} = {" +
      std::to_string(mu) + ", " + std::to_string(1.0 - mu) + "}";
  return w;
}

// -- context sets --------------------------------------------------------------

/// Sum relation as supplied by a caller. Coefficients default to 1 and must be
/// non-negative integers; repeated addends are the same as a coefficient.
struct RelationSpec {
  std::vector<std::string> addends;
  std::string target;
  std::vector<double> coefficients;
};

struct ContextSpec {
  std::vector<Effect> effects;
  std::vector<std::vector<std::string>> contexts;
  std::vector<RelationSpec> relations;
  bool discover = false;
  std::size_t discover_arity = 3;
};

inline constexpr double kRelationIdentityTol = 1e-10;

class ContextSet {
 public:
  ContextSet() = default;

  std::size_t dim() const { return dim_; }
  const std::vector<Effect>& effects() const { return effects_; }
  const std::vector<std::vector<std::string>>& contexts() const { return contexts_; }
  const std::vector<AdditivityRelation>& relations() const { return relations_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  /// Number of relations that came from auto-discovery (a suffix of relations()).
  std::size_t discovered() const { return discovered_; }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& e : effects_) out.push_back(e.label());
    return out;
  }

  std::optional<std::size_t> index_of(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Effect& effect(const std::string& label) const {
    const auto i = index_of(label);
    if (!i) throw Error(Errc::UnknownLabel, label);
    return effects_[*i];
  }

  /// Contexts first, then relations, in input order.
  std::size_t constraint_count() const { return contexts_.size() + relations_.size(); }

  std::string describe_constraint(std::size_t i) const {
    if (i < contexts_.size()) {
      std::string s = "context " + std::to_string(i) + ": ";
      for (std::size_t k = 0; k < contexts_[i].size(); ++k) {
        s += (k == 0 ? "" : " + ") + contexts_[i][k];
      }
      return s + " = I";
    }
    const auto r = i - contexts_.size();
    return "relation " + std::to_string(r) + ": " + relations_[r].describe();
  }

  /// A relation target of "I" is the constant 1 unless "I" is also a label.
  bool target_is_constant(const AdditivityRelation& rel) const {
    return rel.target == kIdentityLabel && !index_of(rel.target);
  }

 private:
  friend ContextSet build_context_set(const ContextSpec& spec);

  std::size_t dim_ = 0;
  std::vector<Effect> effects_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::string>> contexts_;
  std::vector<AdditivityRelation> relations_;
  std::vector<std::string> warnings_;
  std::size_t discovered_ = 0;
};

namespace detail {

inline std::vector<std::string> expand_coefficients(const RelationSpec& rel) {
  if (rel.coefficients.empty()) return rel.addends;
  if (rel.coefficients.size() != rel.addends.size()) {
    throw Error(Errc::BadRelation, "coefficient count does not match addends");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rel.addends.size(); ++i) {
    const double c = rel.coefficients[i];
    if (!std::isfinite(c) || c != std::floor(c)) {
      throw Error(Errc::NonIntegerCoefficients,
                  "coefficient " + std::to_string(c) + " on '" + rel.addends[i] +
                      "': the 0/1 search handles integer relations only; real-coefficient "
                      "contradictions are certified by witness_2d");
    }
    if (c < 0.0) {
      throw Error(Errc::BadRelation, "negative coefficient on '" + rel.addends[i] + "'");
    }
    for (int k = 0; k < static_cast<int>(c); ++k) out.push_back(rel.addends[i]);
  }
  if (out.empty()) throw Error(Errc::BadRelation, "relation without addends");
  return out;
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

inline ContextSet build_context_set(const ContextSpec& spec) {
  ContextSet cs;
  if (!spec.effects.empty()) cs.dim_ = spec.effects.front().dim();
  for (const auto& e : spec.effects) {
    if (e.dim() != cs.dim_) throw Error(Errc::DimMismatch, "effect '" + e.label() + "'");
    if (e.label().empty()) throw Error(Errc::InvalidArgument, "effects need labels");
    if (cs.index_.count(e.label()) != 0) throw Error(Errc::DuplicateLabel, e.label());
    for (const auto& other : cs.effects_) {
      if (frobenius_distance(other.op(), e.op()) < kSameOperatorTol) {
        cs.warnings_.push_back("DuplicateOperator: '" + other.label() + "' and '" +
                               e.label() + "' carry the same operator");
      }
    }
    cs.index_.emplace(e.label(), cs.effects_.size());
    cs.effects_.push_back(e);
  }

  for (std::size_t k = 0; k < spec.contexts.size(); ++k) {
    std::vector<Effect> members;
    for (const auto& label : spec.contexts[k]) members.push_back(cs.effect(label));
    try {
      Povm povm(std::move(members));
    } catch (const Error& err) {
      throw Error(Errc::BadContext, "context " + std::to_string(k) + ": " + err.what());
    }
    cs.contexts_.push_back(spec.contexts[k]);
  }

  const auto d = static_cast<Eigen::Index>(cs.dim_);
  auto target_matrix = [&](const std::string& target) -> Matrix {
    if (const auto i = cs.index_of(target)) return cs.effects_[*i].op().matrix();
    if (target == kIdentityLabel) return Matrix::Identity(d, d);
    throw Error(Errc::UnknownLabel, target);
  };

  for (const auto& rel : spec.relations) {
    AdditivityRelation r{detail::expand_coefficients(rel), rel.target};
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& label : r.addends) sum += cs.effect(label).op().matrix();
    const double gap = (sum - target_matrix(r.target)).norm();
    if (gap > kRelationIdentityTol) {
      throw Error(Errc::BadRelation, r.describe() + " fails by " + std::to_string(gap));
    }
    cs.relations_.push_back(std::move(r));
  }

  if (spec.discover && !cs.effects_.empty()) {
    std::set<std::pair<std::vector<std::string>, std::string>> known;
    for (const auto& r : cs.relations_) known.insert({detail::sorted(r.addends), r.target});
    for (const auto& c : cs.contexts_) known.insert({detail::sorted(c), std::string(kIdentityLabel)});

    std::vector<std::string> targets = cs.labels();
    if (!cs.index_of(std::string(kIdentityLabel))) targets.emplace_back(kIdentityLabel);
    const std::size_t k = cs.effects_.size();

    std::vector<std::size_t> pick;
    std::function<void(std::size_t, const Matrix&)> scan = [&](std::size_t from,
                                                               const Matrix& partial) {
      if (pick.size() >= 2) {
        for (const auto& t : targets) {
          std::vector<std::string> addends;
          bool target_inside = false;
          for (auto i : pick) {
            addends.push_back(cs.effects_[i].label());
            target_inside = target_inside || cs.effects_[i].label() == t;
          }
          if (target_inside) continue;
          if ((partial - target_matrix(t)).norm() > kRelationIdentityTol) continue;
          if (!known.insert({detail::sorted(addends), t}).second) continue;
          cs.relations_.push_back({std::move(addends), t});
          ++cs.discovered_;
        }
      }
      if (pick.size() == spec.discover_arity) return;
      for (std::size_t i = from; i < k; ++i) {
        pick.push_back(i);
        scan(i, partial + cs.effects_[i].op().matrix());
        pick.pop_back();
      }
    };
    scan(0, Matrix::Zero(d, d));
  }
  return cs;
}

// -- 0/1 search ----------------------------------------------------------------

enum class SearchStatus { Sat, Unsat, Unknown };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Sat: return "sat";
    case SearchStatus::Unsat: return "unsat";
    case SearchStatus::Unknown: return "unknown";
  }
  return "unknown";
}

struct SearchOptions {
  std::size_t max_solutions = 64;
  std::uint64_t node_budget = 1'000'000;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::vector<std::string> labels;
  /// Each assignment lists 0/1 values aligned with `labels`.
  std::vector<std::vector<int>> assignments;
  std::uint64_t total_solutions = 0;
  bool count_exact = false;
  /// Constraint indices (ContextSet::describe_constraint order).
  std::vector<std::size_t> core;
  bool core_minimal = false;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

/// sum_i coef_i x_i = rhs over x in {0,1}.
struct LinearConstraint {
  std::vector<std::pair<std::size_t, int>> terms;
  int rhs = 0;
};

inline std::vector<LinearConstraint> compile_constraints(const ContextSet& cs) {
  std::vector<LinearConstraint> out;
  auto finish = [](std::map<std::size_t, int>& coef, int rhs) {
    LinearConstraint c;
    for (auto [v, a] : coef) {
      if (a != 0) c.terms.emplace_back(v, a);
    }
    c.rhs = rhs;
    return c;
  };
  for (const auto& ctx : cs.contexts()) {
    std::map<std::size_t, int> coef;
    for (const auto& label : ctx) ++coef[*cs.index_of(label)];
    out.push_back(finish(coef, 1));
  }
  for (const auto& rel : cs.relations()) {
    std::map<std::size_t, int> coef;
    for (const auto& label : rel.addends) ++coef[*cs.index_of(label)];
    int rhs = 0;
    if (cs.target_is_constant(rel)) {
      rhs = 1;
    } else {
      --coef[*cs.index_of(rel.target)];
    }
    out.push_back(finish(coef, rhs));
  }
  return out;
}

/// Backtracking over variables in label order with bound propagation on each
/// linear equation.
class DispersionFreeSolver {
 public:
  enum class Outcome { Complete, Stopped, BudgetExceeded };

  DispersionFreeSolver(std::size_t num_vars, std::vector<LinearConstraint> constraints)
      : constraints_(std::move(constraints)), value_(num_vars, -1), watch_(num_vars) {
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      for (auto [v, a] : constraints_[c].terms) watch_[v].push_back(c);
    }
  }

  /// Calls `on_solution` for each full assignment; it returns false to stop.
  Outcome run(std::uint64_t node_budget,
              const std::function<bool(const std::vector<int>&)>& on_solution) {
    budget_ = node_budget;
    nodes_ = 0;
    on_solution_ = &on_solution;
    std::fill(value_.begin(), value_.end(), -1);
    trail_.clear();
    if (!count_node()) return Outcome::BudgetExceeded;
    std::vector<std::size_t> all(constraints_.size());
    std::iota(all.begin(), all.end(), 0);
    if (!propagate(all)) return Outcome::Complete;
    return descend(0);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool count_node() { return ++nodes_ <= budget_; }

  void assign(std::size_t v, int x) {
    value_[v] = x;
    trail_.push_back(v);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  bool propagate(std::vector<std::size_t> queue) {
    while (!queue.empty()) {
      const auto& con = constraints_[queue.back()];
      queue.pop_back();
      int fixed = 0, lo = 0, hi = 0;
      for (auto [v, a] : con.terms) {
        if (value_[v] >= 0) {
          fixed += a * value_[v];
        } else {
          lo += std::min(a, 0);
          hi += std::max(a, 0);
        }
      }
      if (con.rhs < fixed + lo || con.rhs > fixed + hi) return false;
      for (auto [v, a] : con.terms) {
        if (value_[v] >= 0) continue;
        const int base_lo = fixed + lo - std::min(a, 0);
        const int base_hi = fixed + hi - std::max(a, 0);
        const bool zero_ok = con.rhs >= base_lo && con.rhs <= base_hi;
        const bool one_ok = con.rhs >= base_lo + a && con.rhs <= base_hi + a;
        if (!zero_ok && !one_ok) return false;
        if (zero_ok && one_ok) continue;
        assign(v, one_ok ? 1 : 0);
        for (auto c : watch_[v]) queue.push_back(c);
      }
    }
    return true;
  }

  Outcome descend(std::size_t from) {
    std::size_t v = from;
    while (v < value_.size() && value_[v] >= 0) ++v;
    if (v == value_.size()) {
      return (*on_solution_)(value_) ? Outcome::Complete : Outcome::Stopped;
    }
    for (int x = 0; x <= 1; ++x) {
      if (!count_node()) return Outcome::BudgetExceeded;
      const std::size_t mark = trail_.size();
      assign(v, x);
      if (propagate(watch_[v])) {
        const auto out = descend(v + 1);
        if (out != Outcome::Complete) {
          undo_to(mark);
          return out;
        }
      }
      undo_to(mark);
    }
    return Outcome::Complete;
  }

  std::vector<LinearConstraint> constraints_;
  std::vector<int> value_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<std::size_t> trail_;
  std::uint64_t budget_ = 0;
  std::uint64_t nodes_ = 0;
  const std::function<bool(const std::vector<int>&)>* on_solution_ = nullptr;
};

}  // namespace detail

/// Exhaustive search for 0/1 valuations satisfying every context and relation
/// of `cs`. Status Unknown means the node budget ran out before any solution
/// was found or the space was exhausted; it is never reported as Unsat.
/// Unsat results carry a core minimized by deletion in constraint order.
inline SearchResult search_dispersion_free(const ContextSet& cs,
                                           const SearchOptions& options = {}) {
  const auto constraints = detail::compile_constraints(cs);
  const std::size_t n = cs.effects().size();
  SearchResult result;
  result.labels = cs.labels();

  detail::DispersionFreeSolver solver(n, constraints);
  const auto outcome = solver.run(options.node_budget, [&](const std::vector<int>& x) {
    if (result.assignments.size() < options.max_solutions) result.assignments.push_back(x);
    ++result.total_solutions;
    return true;
  });
  result.nodes_explored = solver.nodes();

  if (result.total_solutions > 0) {
    result.status = SearchStatus::Sat;
    result.count_exact = outcome == detail::DispersionFreeSolver::Outcome::Complete;
    return result;
  }
  if (outcome == detail::DispersionFreeSolver::Outcome::BudgetExceeded) {
    result.status = SearchStatus::Unknown;
    return result;
  }
  result.status = SearchStatus::Unsat;
  result.count_exact = true;

  // Deletion-based core: drop each constraint whose removal keeps it Unsat.
  std::vector<std::size_t> core(constraints.size());
  std::iota(core.begin(), core.end(), 0);
  bool minimal = true;
  for (std::size_t pos = 0; pos < core.size();) {
    std::vector<detail::LinearConstraint> trial;
    for (std::size_t j = 0; j < core.size(); ++j) {
      if (j != pos) trial.push_back(constraints[core[j]]);
    }
    detail::DispersionFreeSolver sub(n, std::move(trial));
    bool found = false;
    const auto out = sub.run(options.node_budget, [&](const std::vector<int>&) {
      found = true;
      return false;
    });
    result.nodes_explored += sub.nodes();
    if (!found && out == detail::DispersionFreeSolver::Outcome::Complete) {
      core.erase(core.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      if (out == detail::DispersionFreeSolver::Outcome::BudgetExceeded) minimal = false;
      ++pos;
    }
  }
  result.core = std::move(core);
  result.core_minimal = minimal;
  return result;
}

// -- independent verification -------------------------------------------------

namespace detail {

/// Integer check of one constraint against a full 0/1 assignment, read
/// straight from the context set.
inline bool constraint_holds(const ContextSet& cs, std::size_t index,
                             const std::map<std::string, int>& value) {
  if (index < cs.contexts().size()) {
    long sum = 0;
    for (const auto& label : cs.contexts()[index]) sum += value.at(label);
    return sum == 1;
  }
  const auto& rel = cs.relations()[index - cs.contexts().size()];
  long lhs = 0;
  for (const auto& label : rel.addends) lhs += value.at(label);
  const long rhs = cs.target_is_constant(rel) ? 1 : value.at(rel.target);
  return lhs == rhs;
}

inline std::vector<std::string> constraint_labels(const ContextSet& cs, std::size_t index) {
  if (index < cs.contexts().size()) return cs.contexts()[index];
  const auto& rel = cs.relations()[index - cs.contexts().size()];
  auto out = rel.addends;
  if (!cs.target_is_constant(rel)) out.push_back(rel.target);
  return out;
}

/// Plain enumeration of all 0/1 assignments to the labels the constraints
/// mention; true if some assignment satisfies all of them.
inline bool brute_force_satisfiable(const ContextSet& cs,
                                    const std::vector<std::size_t>& subset) {
  std::vector<std::string> vars;
  for (auto i : subset) {
    for (auto& l : constraint_labels(cs, i)) {
      if (std::find(vars.begin(), vars.end(), l) == vars.end()) vars.push_back(l);
    }
  }
  if (vars.size() > 30) return true;  // cannot certify: treated as satisfiable
  std::map<std::string, int> value;
  const std::uint64_t total = std::uint64_t{1} << vars.size();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (std::size_t k = 0; k < vars.size(); ++k) value[vars[k]] = (bits >> k) & 1U;
    bool all = true;
    for (auto i : subset) {
      if (!constraint_holds(cs, i, value)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

/// Re-checks a search result against the context set: every reported
/// assignment satisfies every constraint (Sat), or the core is unsatisfiable
/// and, when claimed minimal, each proper deletion is satisfiable (Unsat).
/// Never throws; any discrepancy yields false.
inline bool verify_certificate(const SearchResult& result, const ContextSet& cs) {
  try {
    if (result.labels != cs.labels()) return false;
    const std::size_t m = cs.constraint_count();
    switch (result.status) {
      case SearchStatus::Unknown:
        return result.assignments.empty() && result.core.empty();
      case SearchStatus::Sat: {
        if (result.assignments.empty() && !cs.labels().empty()) return false;
        if (result.count_exact && result.total_solutions < result.assignments.size()) {
          return false;
        }
        std::set<std::vector<int>> seen;
        for (const auto& a : result.assignments) {
          if (a.size() != result.labels.size()) return false;
          if (!seen.insert(a).second) return false;
          std::map<std::string, int> value;
          for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] != 0 && a[k] != 1) return false;
            value[result.labels[k]] = a[k];
          }
          for (std::size_t i = 0; i < m; ++i) {
            if (!detail::constraint_holds(cs, i, value)) return false;
          }
        }
        return result.core.empty();
      }
      case SearchStatus::Unsat: {
        if (!result.assignments.empty() || result.core.empty()) return false;
        std::set<std::size_t> distinct(result.core.begin(), result.core.end());
        if (distinct.size() != result.core.size() || *distinct.rbegin() >= m) return false;
        if (detail::brute_force_satisfiable(cs, result.core)) return false;
        if (result.core_minimal) {
          for (std::size_t drop = 0; drop < result.core.size(); ++drop) {
            std::vector<std::size_t> rest;
            for (std::size_t j = 0; j < result.core.size(); ++j) {
              if (j != drop) rest.push_back(result.core[j]);
            }
            if (!detail::brute_force_satisfiable(cs, rest)) return false;
          }
        }
        return true;
      }
    }
  } catch (...) {
    return false;
  }
  return false;
}

/// Largest |sum v(E_i) - 1| over contexts and |sum v(addends) - v(target)|
/// over relations for a real-valued valuation on the labels.
inline double max_constraint_residual(const ContextSet& cs,
                                      const std::function<double(const Effect&)>& v) {
  std::map<std::string, double> value;
  for (const auto& e : cs.effects()) value[e.label()] = v(e);
  double worst = 0.0;
  for (const auto& ctx : cs.contexts()) {
    double s = 0.0;
    for (const auto& l : ctx) s += value.at(l);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  for (const auto& rel : cs.relations()) {
    double s = 0.0;
    for (const auto& l : rel.addends) s += value.at(l);
    const double t = cs.target_is_constant(rel) ? 1.0 : value.at(rel.target);
    worst = std::max(worst, std::abs(s - t));
  }
  return worst;
}

}  // namespace effectkit

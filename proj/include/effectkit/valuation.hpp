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

// Valuations on effects.
//
// A generalized probability measure v assigns each effect a number such that
//   (P1) 0 <= v(E) <= 1,
//   (P2) v(I) = 1,
//   (P3) v(E + F + ...) = v(E) + v(F) + ...  whenever E + F + ... <= I.
// Every such v is the Born functional E -> tr[rho E] of a density operator.
// This header provides the checks for (P1)-(P3) on finite tables, the
// extension of a valuation from effects to positive and then to arbitrary
// self-adjoint operators, recovery of rho from valuation data, and outcome
// sampling whose frequencies estimate v.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "effectkit/effect.hpp"
#include "effectkit/random.hpp"

namespace effectkit {

inline constexpr double kValueSlack = 1e-12;
inline constexpr double kRelationTol = 1e-8;
inline constexpr double kSameOperatorTol = 1e-10;
inline constexpr double kJordanZero = 1e-12;
/// Label that denotes the identity operator in additivity relations.
inline constexpr std::string_view kIdentityLabel = "I";

class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator op, double tol = kPsdTol) : op_(std::move(op)) {
    min_eig_ = effectkit::min_eigenvalue(op_);
    if (min_eig_ < -tol) {
      throw Error(Errc::NotPositive,
                  "density operator has eigenvalue " + std::to_string(min_eig_));
    }
    const double tr = op_.matrix().trace().real();
    if (std::abs(tr - 1.0) > tol) {
      throw Error(Errc::TraceNotOne, "density operator has trace " + std::to_string(tr));
    }
  }

  const HermitianOperator& op() const { return op_; }
  std::size_t dim() const { return op_.dim(); }
  double min_eigenvalue() const { return min_eig_; }

 private:
  HermitianOperator op_;
  double min_eig_ = 0.0;
};

/// tr[rho E], clamped to [0, 1].
inline double born(const DensityOperator& rho, const Effect& e) {
  if (rho.dim() != e.dim()) {
    throw Error(Errc::DimMismatch, "state dim " + std::to_string(rho.dim()) +
                                       " vs effect dim " + std::to_string(e.dim()));
  }
  return std::clamp(frobenius_inner(rho.op(), e.op()), 0.0, 1.0);
}

// -- valuation tables ----------------------------------------------------------

struct ValuationEntry {
  Effect effect;
  double value;
  std::optional<double> std_error;
};

/// Finite labelled valuation in insertion order. Values are not range-checked
/// here: a table may hold a candidate valuation that violates (P1), and
/// check_gpm is where that is reported.
class ValuationTable {
 public:
  explicit ValuationTable(std::size_t dim) : dim_(dim) {}

  void add(Effect effect, double value, std::optional<double> std_error = {}) {
    if (effect.dim() != dim_) {
      throw Error(Errc::DimMismatch, "effect '" + effect.label() + "' has dim " +
                                         std::to_string(effect.dim()) + ", table has " +
                                         std::to_string(dim_));
    }
    if (!std::isfinite(value)) {
      throw Error(Errc::NotFinite, "value of '" + effect.label() + "'");
    }
    if (index_.count(effect.label()) != 0) {
      throw Error(Errc::DuplicateLabel, effect.label());
    }
    for (const auto& other : entries_) {
      if (frobenius_distance(other.effect.op(), effect.op()) < kSameOperatorTol) {
        warnings_.push_back("DuplicateOperator: '" + other.effect.label() + "' and '" +
                            effect.label() + "' carry the same operator");
      }
    }
    index_.emplace(effect.label(), entries_.size());
    entries_.push_back({std::move(effect), value, std_error});
  }

  const ValuationEntry* find(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const ValuationEntry& at(std::string_view label) const {
    const auto* e = find(label);
    if (e == nullptr) throw Error(Errc::UnknownLabel, std::string(label));
    return *e;
  }

  double value(std::string_view label) const { return at(label).value; }

  /// First entry whose operator matches `op` within kSameOperatorTol.
  const ValuationEntry* find_operator(const HermitianOperator& op) const {
    if (op.dim() != dim_) return nullptr;
    for (const auto& e : entries_) {
      if (frobenius_distance(e.effect.op(), op) < kSameOperatorTol) return &e;
    }
    return nullptr;
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<ValuationEntry>& entries() const { return entries_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::size_t dim_;
  std::vector<ValuationEntry> entries_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> warnings_;
};

inline ValuationTable born_table(const DensityOperator& rho,
                                 const std::vector<Effect>& effects) {
  ValuationTable table(rho.dim());
  for (const auto& e : effects) table.add(e, born(rho, e));
  return table;
}

// -- axiom checks --------------------------------------------------------------

/// Claim E + F + ... = target; the target is a label or kIdentityLabel.
struct AdditivityRelation {
  std::vector<std::string> addends;
  std::string target;

  std::string describe() const {
    std::string out;
    for (std::size_t i = 0; i < addends.size(); ++i) {
      if (i != 0) out += " + ";
      out += addends[i];
    }
    return out + " = " + target;
  }
};

struct AxiomViolation {
  std::string axiom;  // "P1", "P2" or "P3"
  std::string relation;
  double lhs;
  double rhs;
  double residual;
};

struct AxiomReport {
  bool p1_ok = true;
  bool p2_ok = true;
  bool p3_ok = true;
  std::vector<AxiomViolation> violations;
  /// Relations that could not be checked (SumExceedsIdentity and the like).
  std::vector<std::string> ill_posed;

  bool ok() const { return p1_ok && p2_ok && p3_ok; }

  void flag(AxiomViolation v) {
    if (v.axiom == "P1") p1_ok = false;
    if (v.axiom == "P2") p2_ok = false;
    if (v.axiom == "P3") p3_ok = false;
    violations.push_back(std::move(v));
  }
};

namespace detail {

inline bool is_identity(const HermitianOperator& op, double tol = kSameOperatorTol) {
  const auto d = static_cast<Eigen::Index>(op.dim());
  return (op.matrix() - Matrix::Identity(d, d)).norm() < tol;
}

inline void check_range_and_unit(const ValuationTable& v, AxiomReport& report) {
  for (const auto& e : v.entries()) {
    if (e.value < -kValueSlack || e.value > 1.0 + kValueSlack) {
      const double bound = e.value < 0.0 ? 0.0 : 1.0;
      report.flag({"P1", "0 <= v(" + e.effect.label() + ") <= 1", e.value, bound,
                   std::abs(e.value - bound)});
    }
  }
  for (const auto& e : v.entries()) {
    if (is_identity(e.effect.op()) && std::abs(e.value - 1.0) > kRelationTol) {
      report.flag({"P2", "v(" + e.effect.label() + ") = v(I) = 1", e.value, 1.0,
                   std::abs(e.value - 1.0)});
    }
  }
}

}  // namespace detail

/// Checks (P1) on every entry, (P2) on entries whose operator is I, and (P3)
/// on each relation. A relation whose addends sum beyond I, or whose operator
/// identity does not hold, is listed in `ill_posed` instead of being checked.
inline AxiomReport check_gpm(const ValuationTable& v,
                             const std::vector<AdditivityRelation>& relations,
                             double tol = kRelationTol) {
  AxiomReport report;
  detail::check_range_and_unit(v, report);

  const auto d = static_cast<Eigen::Index>(v.dim());
  for (const auto& rel : relations) {
    if (rel.addends.empty()) {
      throw Error(Errc::BadRelation, "relation without addends");
    }
    Matrix sum = Matrix::Zero(d, d);
    double lhs = 0.0;
    for (const auto& label : rel.addends) {
      const auto& entry = v.at(label);
      sum += entry.effect.op().matrix();
      lhs += entry.value;
    }
    Matrix target_op;
    double rhs = 1.0;
    if (const auto* t = v.find(rel.target)) {
      target_op = t->effect.op().matrix();
      rhs = t->value;
    } else if (rel.target == kIdentityLabel) {
      target_op = Matrix::Identity(d, d);
    } else {
      throw Error(Errc::UnknownLabel, rel.target);
    }

    const HermitianOperator sum_op(Matrix((sum + sum.adjoint()) * 0.5));
    const double top = max_eigenvalue(sum_op);
    if (top > 1.0 + kPovmTol) {
      report.ill_posed.push_back("SumExceedsIdentity: " + rel.describe() +
                                 " (max eigenvalue " + std::to_string(top) + ")");
      continue;
    }
    if ((sum - target_op).norm() > kPovmTol * static_cast<double>(d)) {
      report.ill_posed.push_back("OperatorMismatch: " + rel.describe());
      continue;
    }
    const double residual = std::abs(lhs - rhs);
    if (residual > tol) report.flag({"P3", rel.describe(), lhs, rhs, residual});
  }
  return report;
}

/// Effect-valuation form of the axioms: v >= 0 and sum_i v(E_i) = 1 on every
/// POVM. POVM effects are matched to table entries by label.
inline AxiomReport check_effect_valuation(const ValuationTable& v,
                                          const std::vector<Povm>& povms,
                                          double tol = kRelationTol) {
  AxiomReport report;
  detail::check_range_and_unit(v, report);
  for (const auto& povm : povms) {
    double sum = 0.0;
    std::string desc = "sum v over {";
    for (std::size_t i = 0; i < povm.size(); ++i) {
      const auto& entry = v.at(povm[i].label());
      if (frobenius_distance(entry.effect.op(), povm[i].op()) > kPovmTol) {
        throw Error(Errc::Mismatch, "label '" + povm[i].label() +
                                        "' names a different operator in the table");
      }
      sum += entry.value;
      desc += (i == 0 ? "" : ", ") + povm[i].label();
    }
    desc += "} = 1";
    if (std::abs(sum - 1.0) > tol) report.flag({"P3", desc, sum, 1.0, std::abs(sum - 1.0)});
  }
  return report;
}

// -- valuation oracles and the linear extension --------------------------------

template <class F>
concept EffectValuation = std::invocable<const F&, const Effect&> &&
    std::convertible_to<std::invoke_result_t<const F&, const Effect&>, double>;

struct BornValuation {
  DensityOperator rho;
  double operator()(const Effect& e) const { return born(rho, e); }
};

/// Looks effects up by operator; throws UnknownLabel when the table has no
/// matching entry.
struct TableValuation {
  const ValuationTable* table;
  double operator()(const Effect& e) const {
    if (const auto* entry = table->find_operator(e.op())) return entry->value;
    throw Error(Errc::UnknownLabel, "no table entry for the requested operator");
  }
};

/// v(A) = alpha v(A / alpha) for a positive A and a scale alpha >= max(||A||, 1).
template <EffectValuation V>
double extend_to_positive(const V& v, const HermitianOperator& a, double alpha,
                          double psd_tol = kPsdTol) {
  const auto eig = eig_hermitian(a);
  if (eig.eigenvalues.minCoeff() < -psd_tol) {
    throw Error(Errc::NotPositive, "operator has eigenvalue " +
                                       std::to_string(eig.eigenvalues.minCoeff()));
  }
  const double norm = eig.eigenvalues.cwiseAbs().maxCoeff();
  if (!(alpha >= 1.0) || alpha < norm * (1.0 - 1e-12)) {
    throw Error(Errc::InvalidArgument, "scale " + std::to_string(alpha) +
                                           " does not bring the operator into the effects");
  }
  return alpha * v(Effect(a / alpha, {}, psd_tol));
}

/// Extension with the minimal scale alpha = max(||A||, 1).
template <EffectValuation V>
double extend_to_positive(const V& v, const HermitianOperator& a) {
  if (min_eigenvalue(a) < -kPsdTol) {
    throw Error(Errc::NotPositive, "operator is not positive semidefinite");
  }
  return extend_to_positive(v, a, std::max(operator_norm(a), 1.0));
}

/// C = C_plus - C_minus with C_plus, C_minus positive and orthogonal supports.
struct JordanSplit {
  HermitianOperator positive;
  HermitianOperator negative;
};

/// Eigenvalues within +-kJordanZero go to neither part.
inline JordanSplit jordan_split(const HermitianOperator& c) {
  const auto eig = eig_hermitian(c);
  RealVector pos = RealVector::Zero(eig.eigenvalues.size());
  RealVector neg = RealVector::Zero(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < pos.size(); ++i) {
    const double l = eig.eigenvalues(i);
    if (l > kJordanZero) pos(i) = l;
    if (l < -kJordanZero) neg(i) = -l;
  }
  return {from_spectrum(eig, pos), from_spectrum(eig, neg)};
}

/// v(A) - v(B) for positive A, B; independent of the decomposition chosen.
template <EffectValuation V>
double extend_difference(const V& v, const HermitianOperator& a, const HermitianOperator& b) {
  return extend_to_positive(v, a) - extend_to_positive(v, b);
}

template <EffectValuation V>
double extend_to_selfadjoint(const V& v, const HermitianOperator& c) {
  const auto split = jordan_split(c);
  return extend_difference(v, split.positive, split.negative);
}

// -- density operator reconstruction ------------------------------------------

/// Orthonormal basis of the d^2-dimensional real space of Hermitian d x d
/// matrices under <A, B> = tr[A B]: the diagonal units, then for j < k the
/// symmetric and antisymmetric off-diagonal pairs scaled by 1/sqrt(2).
inline std::vector<Matrix> hermitian_basis(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  std::vector<Matrix> basis;
  basis.reserve(d * d);
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix b = Matrix::Zero(n, n);
    b(j, j) = 1.0;
    basis.push_back(std::move(b));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Matrix x = Matrix::Zero(n, n);
      x(j, k) = s;
      x(k, j) = s;
      basis.push_back(std::move(x));
      Matrix y = Matrix::Zero(n, n);
      y(j, k) = -i * s;
      y(k, j) = i * s;
      basis.push_back(std::move(y));
    }
  }
  return basis;
}

struct ReconstructionOptions {
  bool min_norm = false;
  bool project_psd = false;
  double rank_cutoff = 1e-10;       // relative to the largest singular value
  double inconsistency_tol = 1e-6;  // on ||tr[rho E_k] - v_k||_2
};

struct ReconstructionDiagnostics {
  double residual = 0.0;
  double trace_dev = 0.0;
  double min_eig = 0.0;
  bool projected = false;
  std::size_t rank = 0;
  std::size_t deficiency = 0;  // d^2 - rank
  // The same figures for the unprojected linear solution.
  double raw_residual = 0.0;
  double raw_trace_dev = 0.0;
  double raw_min_eig = 0.0;
};

struct Reconstruction {
  DensityOperator state;
  HermitianOperator unprojected;
  ReconstructionDiagnostics diagnostics;
};

namespace detail {

inline double frame_residual(const std::vector<Effect>& frame,
                             const std::vector<double>& values,
                             const HermitianOperator& rho) {
  double sq = 0.0;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    const double r = frobenius_inner(rho, frame[k].op()) - values[k];
    sq += r * r;
  }
  return std::sqrt(sq);
}

}  // namespace detail

/// Solves tr[rho E_k] = v_k for Hermitian rho in least squares over the
/// Hermitian coordinate space. The frame must span that space (rank d^2 at
/// the relative singular-value cutoff) unless `min_norm` is set, in which case
/// the minimum-Frobenius-norm solution is returned.
///
/// Throws FrameDeficient, or ValuesInconsistent when the values are not
/// reproduced by any Hermitian rho or the solution is not a density operator
/// (set `project_psd` for statistical inputs).
inline Reconstruction reconstruct_density(const std::vector<Effect>& frame,
                                          const std::vector<double>& values,
                                          const ReconstructionOptions& options = {}) {
  if (frame.empty()) throw Error(Errc::InvalidArgument, "empty frame");
  if (frame.size() != values.size()) {
    throw Error(Errc::Mismatch, std::to_string(frame.size()) + " effects but " +
                                    std::to_string(values.size()) + " values");
  }
  const std::size_t d = frame.front().dim();
  for (const auto& e : frame) {
    if (e.dim() != d) throw Error(Errc::DimMismatch, "frame effects differ in dimension");
  }
  for (double x : values) {
    if (!(x >= -kValueSlack && x <= 1.0 + kValueSlack)) {
      throw Error(Errc::InvalidArgument, "value " + std::to_string(x) + " outside [0, 1]");
    }
  }

  const auto basis = hermitian_basis(d);
  const auto rows = static_cast<Eigen::Index>(frame.size());
  const auto cols = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd design(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const Matrix& e = frame[static_cast<std::size_t>(k)].op().matrix();
    for (Eigen::Index b = 0; b < cols; ++b) {
      design(k, b) = e.cwiseProduct(basis[static_cast<std::size_t>(b)].conjugate()).sum().real();
    }
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(values.data(), rows);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = options.rank_cutoff * sigma_max;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  const std::size_t full = d * d;
  if (rank < full && !options.min_norm) {
    throw Error(Errc::FrameDeficient, "frame rank " + std::to_string(rank) + " < " +
                                          std::to_string(full));
  }

  Eigen::VectorXd coords = Eigen::VectorXd::Zero(cols);
  const Eigen::VectorXd utb = svd.matrixU().transpose() * rhs;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) coords += (utb(i) / sv(i)) * svd.matrixV().col(i);
  }
  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index b = 0; b < cols; ++b) {
    rho += coords(b) * basis[static_cast<std::size_t>(b)];
  }
  const HermitianOperator raw(Matrix((rho + rho.adjoint()) * 0.5));

  ReconstructionDiagnostics diag;
  diag.rank = rank;
  diag.deficiency = full - rank;
  diag.raw_residual = detail::frame_residual(frame, values, raw);
  diag.raw_trace_dev = std::abs(raw.matrix().trace().real() - 1.0);
  const auto raw_eig = eig_hermitian(raw);
  diag.raw_min_eig = raw_eig.eigenvalues.minCoeff();

  if (diag.raw_residual > options.inconsistency_tol) {
    throw Error(Errc::ValuesInconsistent,
                "values are not reproduced by any linear functional (residual " +
                    std::to_string(diag.raw_residual) + ")");
  }

  HermitianOperator estimate = raw;
  if (options.project_psd) {
    RealVector clipped = raw_eig.eigenvalues.cwiseMax(0.0);
    const double tr = clipped.sum();
    if (!(tr > 0.0)) {
      throw Error(Errc::ValuesInconsistent, "no positive part left after clipping");
    }
    estimate = from_spectrum(raw_eig, clipped / tr);
    diag.projected = true;
  }
  diag.residual = detail::frame_residual(frame, values, estimate);
  diag.trace_dev = std::abs(estimate.matrix().trace().real() - 1.0);
  diag.min_eig = min_eigenvalue(estimate);

  try {
    return {DensityOperator(estimate), raw, diag};
  } catch (const Error& e) {
    throw Error(Errc::ValuesInconsistent,
                std::string("solution is not a density operator (") + e.what() +
                    "); use project_psd for statistical data");
  }
}

// -- sampling ------------------------------------------------------------------

struct SampleRecord {
  std::vector<std::string> povm;
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

inline constexpr double kProbabilityTol = 1e-8;

/// Born probabilities over the POVM, renormalized if they sum to 1 within
/// kProbabilityTol.
inline std::vector<double> outcome_probabilities(const DensityOperator& rho,
                                                 const Povm& povm) {
  if (rho.dim() != povm.dim()) {
    throw Error(Errc::DimMismatch, "state dim " + std::to_string(rho.dim()) +
                                       " vs POVM dim " + std::to_string(povm.dim()));
  }
  std::vector<double> p;
  p.reserve(povm.size());
  double total = 0.0;
  for (const auto& e : povm.effects()) {
    p.push_back(born(rho, e));
    total += p.back();
  }
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw Error(Errc::ProbabilityDeficit, "probabilities sum to " + std::to_string(total));
  }
  for (auto& x : p) x /= total;
  return p;
}

/// n i.i.d. draws by inverse CDF; shot k uses shot_uniform(seed, k) and picks
/// the lowest index whose cumulative probability exceeds it.
inline SampleRecord sample_outcomes(const DensityOperator& rho, const Povm& povm,
                                    std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::InvalidArgument, "shot count must be at least 1");
  const auto p = outcome_probabilities(rho, povm);
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  std::size_t last = p.size() - 1;
  while (last > 0 && p[last] <= 0.0) --last;

  SampleRecord rec{povm.labels(), std::vector<std::uint64_t>(p.size(), 0), n, seed};
  for (std::uint64_t k = 0; k < n; ++k) {
    const double u = shot_uniform(seed, k);
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) -
                                        cdf.begin());
    if (idx >= p.size()) idx = last;
    ++rec.counts[idx];
  }
  return rec;
}

/// Relative frequencies with standard errors sqrt(v (1 - v) / n).
inline ValuationTable estimate_valuation(const SampleRecord& record, const Povm& povm) {
  if (record.povm != povm.labels()) {
    throw Error(Errc::Mismatch, "record labels do not match the POVM");
  }
  if (record.counts.size() != povm.size()) {
    throw Error(Errc::Mismatch, "record has " + std::to_string(record.counts.size()) +
                                    " counts for " + std::to_string(povm.size()) +
                                    " outcomes");
  }
  std::uint64_t total = 0;
  for (auto c : record.counts) total += c;
  if (record.n == 0 || total != record.n) {
    throw Error(Errc::Mismatch, "counts sum to " + std::to_string(total) + ", n = " +
                                    std::to_string(record.n));
  }
  ValuationTable table(povm.dim());
  const double n = static_cast<double>(record.n);
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const double v = static_cast<double>(record.counts[i]) / n;
    table.add(povm[i], v, std::sqrt(v * (1.0 - v) / n));
  }
  return table;
}

}  // namespace effectkit

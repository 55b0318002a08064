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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "effectkit/effectkit.hpp"
#include "test_support.hpp"

namespace ek = effectkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

ek::HermitianOperator psd_sqrt(const ek::HermitianOperator& a) {
  const auto eig = ek::eig_hermitian(a);
  ek::RealVector s = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return ek::from_spectrum(eig, s);
}

Outcome extension_round_trip() {
  const auto start = Clock::now();
  ek::Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    const ek::DensityOperator rho(ek::random_density_matrix(d, rng));
    std::vector<ek::Effect> frame;
    std::vector<double> values;
    for (std::size_t k = 0; k < d * d + 3; ++k) {
      frame.push_back(ek::random_effect(d, rng, "E" + std::to_string(k)));
      values.push_back(ek::born(rho, frame.back()));
    }
    const auto rec = ek::reconstruct_density(frame, values);
    worst = std::max(worst, ek::frobenius_distance(rec.state.op(), rho.op()));
  }
  const double t = seconds_since(start);
  return {worst <= 1e-8 && t <= 30.0,
          fmt("200 trials, max ||rho - rho'||_F = %.3e (limit 1e-8), %.2f s (limit 30 s)", worst, t)};
}

Outcome proof_step_properties() {
  const auto start = Clock::now();
  ek::Rng rng(1002);
  std::uniform_real_distribution<double> scale(0.0, 5.0);
  double homogeneity = 0.0, additivity = 0.0, order = 0.0, split = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    const ek::BornValuation v{ek::DensityOperator(ek::random_density_matrix(d, rng))};

    const ek::Effect e = ek::random_effect(d, rng);
    const double alpha = scale(rng);
    homogeneity = std::max(homogeneity, std::abs(ek::extend_to_positive(v, alpha * e.op()) -
                                                 alpha * ek::born(v.rho, e)));

    const ek::HermitianOperator a = ek::random_psd(d, rng, 2.0);
    const ek::HermitianOperator b = ek::random_psd(d, rng, 2.0);
    additivity = std::max(additivity, std::abs(ek::extend_to_positive(v, a + b) -
                                               ek::extend_to_positive(v, a) -
                                               ek::extend_to_positive(v, b)));

    // F = E + sqrt(I - E) G sqrt(I - E) satisfies E <= F <= I.
    const ek::HermitianOperator root = psd_sqrt(ek::complement(e).op());
    const ek::Effect g = ek::random_effect(d, rng);
    const ek::Effect f(e.op() + ek::HermitianOperator(ek::Matrix(root.matrix() * g.op().matrix() *
                                                                  root.matrix())));
    order = std::max(order, ek::born(v.rho, e) - ek::born(v.rho, f));

    const ek::HermitianOperator c = ek::random_hermitian(d, rng, 2.0);
    const auto jordan = ek::jordan_split(c);
    const ek::HermitianOperator s = ek::random_psd(d, rng, 1.5);
    split = std::max(split, std::abs(ek::extend_to_selfadjoint(v, c) -
                                     ek::extend_difference(v, jordan.positive + s,
                                                           jordan.negative + s)));
  }
  const double t = seconds_since(start);
  const bool ok = homogeneity <= 1e-9 && additivity <= 1e-9 && order <= 1e-9 && split <= 1e-9 &&
                  t <= 60.0;
  return {ok, fmt("1000 trials each; homogeneity %.2e, additivity %.2e, order excess %.2e, "
                  "split dependence %.2e (limit 1e-9), %.2f s (limit 60 s)",
                  homogeneity, additivity, order, split, t)};
}

Outcome witness() {
  const auto w = ek::witness_2d({{0.0, 0.0, 1.0}}, {{1.0, 0.0, 0.0}}, 0.5);
  const double closed = (1.0 + std::sqrt(2.0) / 2.0) / 2.0;
  const double poly = ek::testing::char_poly_eigenvalues(w.E.op().matrix()).second;
  const double dev_closed = std::abs(w.mu - closed);
  const double dev_eig = std::abs(w.mu - w.mu_eigensolver);
  const double dev_poly = std::abs(w.mu - poly);
  const bool ok = dev_closed <= 1e-10 && dev_eig <= 1e-10 && dev_poly <= 1e-10 && w.mu > 0.0 &&
                  w.mu < 1.0;
  return {ok, fmt("mu = %.17g; |mu - closed form| = %.1e, |mu - eigensolver| = %.1e, "
                  "|mu - char. poly| = %.1e (limit 1e-10)",
                  w.mu, dev_closed, dev_eig, dev_poly)};
}

Outcome half_identity_unsat() {
  ek::ContextSpec spec;
  spec.effects = {ek::Effect(ek::HermitianOperator::identity(2), "I"),
                  ek::Effect(0.5 * ek::HermitianOperator::identity(2), "H")};
  spec.contexts = {{"H", "H"}};
  const ek::ContextSet cs = ek::build_context_set(spec);
  const auto start = Clock::now();
  const auto r = ek::search_dispersion_free(cs);
  const bool verified = ek::verify_certificate(r, cs);
  const double t = seconds_since(start);
  const bool ok = r.status == ek::SearchStatus::Unsat && r.core.size() == 1 && verified &&
                  t < 1e-3;
  return {ok, fmt("status %s, core size %zu (%s), verified %s, %.1f us (limit 1 ms)",
                  ek::to_string(r.status), r.core.size(),
                  r.core.empty() ? "-" : cs.describe_constraint(r.core[0]).c_str(),
                  verified ? "yes" : "no", t * 1e6)};
}

Outcome projective_sat() {
  ek::ContextSpec spec;
  spec.effects = {ek::testing::bloch_effect(0.0, 0.0, 1.0, "P"),
                  ek::testing::bloch_effect(0.0, 0.0, -1.0, "P'"),
                  ek::testing::bloch_effect(1.0, 0.0, 0.0, "Q"),
                  ek::testing::bloch_effect(-1.0, 0.0, 0.0, "Q'")};
  spec.contexts = {{"P", "P'"}, {"Q", "Q'"}};
  const ek::ContextSet cs = ek::build_context_set(spec);
  const auto r = ek::search_dispersion_free(cs);
  const bool verified = ek::verify_certificate(r, cs);
  const bool ok = r.status == ek::SearchStatus::Sat && r.count_exact &&
                  r.total_solutions == 4 && r.assignments.size() == 4 && verified;
  return {ok, fmt("status %s, %llu assignments (exact: %s), verified %s", ek::to_string(r.status),
                  static_cast<unsigned long long>(r.total_solutions),
                  r.count_exact ? "yes" : "no", verified ? "yes" : "no")};
}

Outcome exhaustiveness() {
  const auto start = Clock::now();
  ek::Rng rng(1006);
  int mismatches = 0, sat = 0, unsat = 0;
  std::size_t largest = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const ek::ContextSet cs = ek::build_context_set(ek::testing::random_context_spec(rng, 12));
    largest = std::max(largest, cs.effects().size());
    ek::SearchOptions opts;
    opts.max_solutions = std::size_t{1} << 12;
    const auto r = ek::search_dispersion_free(cs, opts);
    const auto expected = ek::testing::enumerate_solutions(cs);
    const std::set<std::vector<int>> got(r.assignments.begin(), r.assignments.end());
    const auto expected_status = expected.empty() ? ek::SearchStatus::Unsat : ek::SearchStatus::Sat;
    if (r.status != expected_status || got != expected || r.total_solutions != expected.size()) {
      ++mismatches;
    }
    (expected.empty() ? unsat : sat)++;
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && t <= 60.0,
          fmt("50 sets (%d sat, %d unsat, up to %zu effects), %d mismatches vs enumeration, "
              "%.2f s (limit 60 s)",
              sat, unsat, largest, mismatches, t)};
}

Outcome tomography() {
  const auto start = Clock::now();
  // Tetrahedral qubit POVM: E_k = (I + t_k . sigma) / 4.
  const double s = 1.0 / std::sqrt(3.0);
  const double tet[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<ek::Effect> frame;
  for (int k = 0; k < 4; ++k) {
    frame.emplace_back(0.5 * ek::testing::bloch_op(tet[k][0], tet[k][1], tet[k][2]),
                       "S" + std::to_string(k));
  }
  const ek::Povm povm(frame);
  ek::Rng rng(1007);
  const ek::DensityOperator rho(ek::random_density_matrix(2, rng));
  const auto record = ek::sample_outcomes(rho, povm, 1'000'000, 2026);
  const auto table = ek::estimate_valuation(record, povm);
  std::vector<double> values;
  for (const auto& e : table.entries()) values.push_back(e.value);
  ek::ReconstructionOptions opts;
  opts.project_psd = true;
  const auto rec = ek::reconstruct_density(povm.effects(), values, opts);
  const double dist = ek::frobenius_distance(rec.state.op(), rho.op());
  const double t = seconds_since(start);
  return {dist <= 0.01 && t <= 10.0,
          fmt("d = 2, 1e6 shots, seed 2026: ||rho - rho_hat||_F = %.2e (limit 0.01), %.2f s "
              "(limit 10 s)",
              dist, t)};
}

Outcome axiom_soundness() {
  ek::Rng rng(1008);
  std::uniform_int_distribution<int> coin(0, 1);
  int born_failures = 0, missed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 5);
    const ek::DensityOperator rho(ek::random_density_matrix(d, rng));
    const ek::Povm povm = ek::random_povm(d, k, rng);

    // Partial sums over a random subset of outcomes become extra entries.
    std::vector<ek::Effect> effects = povm.effects();
    std::vector<ek::AdditivityRelation> relations = {{povm.labels(), "I"}};
    std::vector<std::string> subset;
    ek::HermitianOperator partial = ek::HermitianOperator::zero(d);
    for (const auto& e : povm.effects()) {
      if (coin(rng) == 1) {
        subset.push_back(e.label());
        partial = partial + e.op();
      }
    }
    if (subset.size() >= 2) {
      effects.emplace_back(partial, "S");
      relations.push_back({subset, "S"});
    }
    const ek::ValuationTable table = ek::born_table(rho, effects);
    if (!ek::check_gpm(table, relations, 1e-8).ok() ||
        !ek::check_effect_valuation(table, {povm}, 1e-8).ok()) {
      ++born_failures;
    }

    // Perturb one POVM value by 0.05, toward the interior of [0, 1].
    ek::ValuationTable corrupted(d);
    const std::size_t victim = static_cast<std::size_t>(trial) % k;
    for (std::size_t i = 0; i < table.entries().size(); ++i) {
      const auto& entry = table.entries()[i];
      double value = entry.value;
      if (i == victim) value += value <= 0.5 ? 0.05 : -0.05;
      corrupted.add(entry.effect, value);
    }
    const bool flagged = !ek::check_effect_valuation(corrupted, {povm}, 1e-8).ok() &&
                         !ek::check_gpm(corrupted, relations, 1e-8).ok();
    if (!flagged) ++missed;
  }
  return {born_failures == 0 && missed == 0,
          fmt("200 instances: %d Born valuations rejected, %d corrupted valuations missed "
              "(tolerance 1e-8, perturbation 0.05)",
              born_failures, missed)};
}

}  // namespace

int main() {
  report(1, "extension round-trip", extension_round_trip);
  report(2, "proof-step properties", proof_step_properties);
  report(3, "qubit no-go witness", witness);
  report(4, "dispersion-free unsat", half_identity_unsat);
  report(5, "projective sat contrast", projective_sat);
  report(6, "exhaustiveness oracle", exhaustiveness);
  report(7, "statistical tomography", tomography);
  report(8, "axiom soundness", axiom_soundness);
  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}

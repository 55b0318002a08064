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

// Random operators for tests and the `gen` subcommand, and the counter-based
// uniform stream used for outcome sampling.
//
// Generators draw from std::mt19937_64 (19937-bit state). Outcome sampling
// uses a SplitMix64 finalizer keyed by (seed, shot index), 64 bits of state,
// so shot k is reproducible regardless of how shots are partitioned.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "effectkit/effect.hpp"

namespace effectkit {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) for shot `index` of stream `seed`; 53-bit mantissa.
inline double shot_uniform(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// d x d matrix with i.i.d. standard complex Gaussian entries.
inline Matrix ginibre(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(d);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

/// Haar-random unitary: QR of a Ginibre sample with the phases of R's
/// diagonal moved into Q.
inline Matrix haar_unitary(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    if (mag > 0.0) q.col(k) *= rkk / mag;
  }
  return q;
}

inline Eigen::VectorXcd random_unit_vector(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

inline HermitianOperator random_hermitian(std::size_t d, Rng& rng, double scale = 1.0) {
  const Matrix g = ginibre(d, rng);
  return HermitianOperator(Matrix(scale * 0.5 * (g + g.adjoint())));
}

/// U diag(u) U^dagger with u_i uniform in [lo, hi].
inline HermitianOperator random_spectrum_operator(std::size_t d, Rng& rng, double lo,
                                                  double hi) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  const Matrix u = haar_unitary(d, rng);
  RealVector spectrum(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) spectrum(i) = uniform(rng);
  Matrix m = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
  return HermitianOperator(Matrix((m + m.adjoint()) * 0.5));
}

inline Effect random_effect(std::size_t d, Rng& rng, std::string label = {}) {
  return Effect(random_spectrum_operator(d, rng, 0.0, 1.0), std::move(label));
}

/// Positive operator with spectrum in [0, scale].
inline HermitianOperator random_psd(std::size_t d, Rng& rng, double scale = 1.0) {
  return random_spectrum_operator(d, rng, 0.0, scale);
}

/// G G^dagger / tr for a Ginibre G: full-rank with probability one.
inline HermitianOperator random_density_matrix(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator(Matrix((rho + rho.adjoint()) * 0.5));
}

/// Hermitian inverse square root of a positive definite operator.
inline Matrix inverse_sqrt(const HermitianOperator& s) {
  const auto eig = eig_hermitian(s);
  RealVector inv = eig.eigenvalues;
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    if (!(inv(i) > 0.0)) {
      throw Error(Errc::NotPositive, "inverse square root of a singular operator");
    }
    inv(i) = 1.0 / std::sqrt(inv(i));
  }
  return eig.eigenvectors * inv.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

/// k random positive operators A_i normalized as S^{-1/2} A_i S^{-1/2},
/// S = sum A_i. Labels are `prefix0`, `prefix1`, ...
inline Povm random_povm(std::size_t d, std::size_t k, Rng& rng,
                        const std::string& prefix = "E") {
  if (k == 0) throw Error(Errc::InvalidArgument, "POVM needs at least one outcome");
  std::vector<Matrix> parts;
  const auto n = static_cast<Eigen::Index>(d);
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix g = ginibre(d, rng);
    parts.push_back(g * g.adjoint());
    sum += parts.back();
  }
  const Matrix w = inverse_sqrt(HermitianOperator(Matrix((sum + sum.adjoint()) * 0.5)));
  std::vector<Effect> effects;
  effects.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Matrix e = w * parts[i] * w;
    effects.emplace_back(HermitianOperator(Matrix((e + e.adjoint()) * 0.5)),
                         prefix + std::to_string(i));
  }
  return Povm(std::move(effects));
}

inline BlochVector random_bloch(Rng& rng, double max_norm = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  BlochVector v{{normal(rng), normal(rng), normal(rng)}};
  const double r = max_norm * std::cbrt(uniform(rng));
  return (r / v.norm()) * v;
}

inline BlochVector random_unit_bloch(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  BlochVector v{{normal(rng), normal(rng), normal(rng)}};
  return (1.0 / v.norm()) * v;
}

}  // namespace effectkit

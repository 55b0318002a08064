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

// Effects (0 <= E <= I), finite POVMs, and the qubit Bloch parameterization
// A = (I + a.sigma)/2.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "effectkit/operator.hpp"

namespace effectkit {

inline constexpr double kEffectTol = 1e-9;
inline constexpr double kPovmTol = 1e-8;          // per unit of dimension
inline constexpr double kSpectralGapTol = 1e-9;

/// An operator with spectrum in [0, 1] plus a caller-chosen label. Labels are
/// the identity of an effect inside valuation tables and context sets.
class Effect {
 public:
  explicit Effect(HermitianOperator op, std::string label = {},
                  double tol = kEffectTol)
      : op_(std::move(op)), label_(std::move(label)) {
    const auto eig = eig_hermitian(op_);
    min_eig_ = eig.eigenvalues.minCoeff();
    max_eig_ = eig.eigenvalues.maxCoeff();
    if (min_eig_ < -tol) {
      throw Error(Errc::NotPositive, describe() + " has eigenvalue " +
                                         std::to_string(min_eig_) + " < 0");
    }
    if (max_eig_ > 1.0 + tol) {
      throw Error(Errc::ExceedsIdentity, describe() + " has eigenvalue " +
                                             std::to_string(max_eig_) + " > 1");
    }
  }

  const HermitianOperator& op() const { return op_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return op_.dim(); }
  double min_eigenvalue() const { return min_eig_; }
  double max_eigenvalue() const { return max_eig_; }

  Effect relabeled(std::string label) const {
    Effect copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

 private:
  std::string describe() const {
    return label_.empty() ? std::string("effect") : "effect '" + label_ + "'";
  }

  HermitianOperator op_;
  std::string label_;
  double min_eig_ = 0.0;
  double max_eig_ = 0.0;
};

inline Effect validate_effect(const HermitianOperator& op, std::string label = {},
                              double tol = kEffectTol) {
  return Effect(op, std::move(label), tol);
}

/// Finite outcome set: effects of a common dimension summing to I within
/// tol * dim in Frobenius norm.
class Povm {
 public:
  explicit Povm(std::vector<Effect> effects, double tol = kPovmTol)
      : effects_(std::move(effects)) {
    if (effects_.empty()) throw Error(Errc::InvalidArgument, "POVM has no effects");
    dim_ = effects_.front().dim();
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim_),
                              static_cast<Eigen::Index>(dim_));
    for (const auto& e : effects_) {
      if (e.dim() != dim_) {
        throw Error(Errc::DimMismatch, "effect '" + e.label() + "' has dim " +
                                           std::to_string(e.dim()) + ", expected " +
                                           std::to_string(dim_));
      }
      sum += e.op().matrix();
    }
    sum_deviation_ = (sum - Matrix::Identity(sum.rows(), sum.cols())).norm();
    if (!(sum_deviation_ <= tol * static_cast<double>(dim_))) {
      throw Error(Errc::SumNotIdentity,
                  "||sum E - I||_F = " + std::to_string(sum_deviation_));
    }
  }

  const std::vector<Effect>& effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }
  std::size_t dim() const { return dim_; }
  double sum_deviation() const { return sum_deviation_; }
  const Effect& operator[](std::size_t i) const { return effects_[i]; }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(effects_.size());
    for (const auto& e : effects_) out.push_back(e.label());
    return out;
  }

 private:
  std::vector<Effect> effects_;
  std::size_t dim_ = 0;
  double sum_deviation_ = 0.0;
};

inline Povm validate_povm(std::vector<Effect> effects, double tol = kPovmTol) {
  return Povm(std::move(effects), tol);
}

inline bool is_projection(const Effect& e, double tol = 1e-8) {
  const Matrix& m = e.op().matrix();
  return (m * m - m).norm() <= tol;
}

/// I - E, labelled with a trailing prime.
inline Effect complement(const Effect& e) {
  const auto d = static_cast<Eigen::Index>(e.dim());
  Matrix m = Matrix::Identity(d, d) - e.op().matrix();
  return Effect(HermitianOperator(m), e.label().empty() ? "" : e.label() + "'");
}

// -- qubit Bloch sphere --------------------------------------------------------

/// Real 3-vector a of A = (I + a.sigma)/2. |a| <= 1 for states, |a| = 1 for
/// rank-1 projections; not enforced here.
struct BlochVector {
  std::array<double, 3> a{0.0, 0.0, 0.0};

  double norm() const { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }
  double operator[](std::size_t k) const { return a[k]; }

  friend BlochVector operator*(double s, const BlochVector& v) {
    return {{s * v.a[0], s * v.a[1], s * v.a[2]}};
  }
  friend BlochVector operator+(const BlochVector& u, const BlochVector& v) {
    return {{u.a[0] + v.a[0], u.a[1] + v.a[1], u.a[2] + v.a[2]}};
  }
  friend BlochVector operator-(const BlochVector& v) { return (-1.0) * v; }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

inline double dot(const BlochVector& u, const BlochVector& v) {
  return u.a[0] * v.a[0] + u.a[1] * v.a[1] + u.a[2] * v.a[2];
}

// sigma_y = [[0, -i], [i, 0]].
inline const std::array<Eigen::Matrix2cd, 3>& pauli_matrices() {
  static const std::array<Eigen::Matrix2cd, 3> paulis = [] {
    const Complex i(0.0, 1.0);
    std::array<Eigen::Matrix2cd, 3> p;
    p[0] << 0.0, 1.0, 1.0, 0.0;
    p[1] << 0.0, -i, i, 0.0;
    p[2] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  return paulis;
}

/// (I + a.sigma)/2. The larger diagonal entry is formed as 1 minus the smaller
/// one, which makes the floating-point trace exactly 1.
inline HermitianOperator bloch_to_operator(const BlochVector& v) {
  Matrix m(2, 2);
  const double low = 0.5 * (1.0 - std::abs(v.a[2]));
  m(0, 0) = v.a[2] >= 0.0 ? 1.0 - low : low;
  m(1, 1) = v.a[2] >= 0.0 ? low : 1.0 - low;
  m(0, 1) = 0.5 * Complex(v.a[0], -v.a[1]);
  m(1, 0) = 0.5 * Complex(v.a[0], v.a[1]);
  return HermitianOperator(m);
}

inline BlochVector operator_to_bloch(const HermitianOperator& h, double tol = 1e-9) {
  if (h.dim() != 2) {
    throw Error(Errc::NotDimTwo, "dimension is " + std::to_string(h.dim()));
  }
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw Error(Errc::TraceNotOne, "trace is " + std::to_string(tr));
  }
  const auto& s = pauli_matrices();
  BlochVector out;
  for (std::size_t k = 0; k < 3; ++k) {
    out.a[k] = (h.matrix() * s[k]).trace().real();
  }
  return out;
}

// -- spectral decomposition of effects ----------------------------------------

struct SpectralComponent {
  double eigenvalue;
  Effect projector;
};

/// Distinct eigenvalues (ascending, grouped when consecutive ones differ by at
/// most `gap_tol`) with their spectral projectors. The basis inside a
/// degenerate group is solver-chosen; only the projector is meaningful.
inline std::vector<SpectralComponent> spectral_split(const Effect& e,
                                                     double gap_tol = kSpectralGapTol) {
  const auto eig = eig_hermitian(e.op());
  const std::size_t d = eig.dim();
  std::vector<SpectralComponent> out;
  std::size_t begin = 0;
  while (begin < d) {
    std::size_t end = begin + 1;
    while (end < d && eig.eigenvalues[static_cast<Eigen::Index>(end)] -
                              eig.eigenvalues[static_cast<Eigen::Index>(end - 1)] <=
                          gap_tol) {
      ++end;
    }
    Matrix proj = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    double mean = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      proj += eig.projector(i);
      mean += eig.eigenvalues[static_cast<Eigen::Index>(i)];
    }
    mean /= static_cast<double>(end - begin);
    std::string label = e.label().empty()
                            ? std::string()
                            : e.label() + "#" + std::to_string(out.size());
    out.push_back({mean, Effect(HermitianOperator(Matrix((proj + proj.adjoint()) * 0.5)),
                                std::move(label))});
    begin = end;
  }
  return out;
}

}  // namespace effectkit

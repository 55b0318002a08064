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

// Dense complex linear algebra for small Hilbert-space dimensions.
//
// Everything in this toolkit is carried by HermitianOperator: effects,
// density operators and the self-adjoint operators a valuation is extended
// to. Values are immutable once built; all operations are pure.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effectkit/error.hpp"

namespace effectkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr std::size_t kDefaultMaxDim = 64;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

/// Square complex matrix with 1 <= dim <= max_dim and finite entries.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Matrix m, std::size_t max_dim = kDefaultMaxDim)
      : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
      throw Error(Errc::DimMismatch, "matrix is " + std::to_string(m_.rows()) +
                                         "x" + std::to_string(m_.cols()));
    }
    if (m_.rows() < 1) {
      throw Error(Errc::InvalidArgument, "dimension must be at least 1");
    }
    if (static_cast<std::size_t>(m_.rows()) > max_dim) {
      throw Error(Errc::InvalidArgument,
                  "dimension " + std::to_string(m_.rows()) +
                      " exceeds the configured cap " + std::to_string(max_dim));
    }
    if (!m_.allFinite()) throw Error(Errc::NotFinite, "matrix has NaN/Inf entries");
  }

  static ComplexMatrix identity(std::size_t d) {
    return ComplexMatrix(Matrix::Identity(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(d)));
  }
  static ComplexMatrix zero(std::size_t d) {
    return ComplexMatrix(Matrix::Zero(static_cast<Eigen::Index>(d),
                                      static_cast<Eigen::Index>(d)));
  }
  static ComplexMatrix diag(std::initializer_list<double> values) {
    return diag(std::vector<double>(values));
  }
  static ComplexMatrix diag(const std::vector<double>& values) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                            static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    }
    return ComplexMatrix(std::move(m));
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix m_;
};

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  return ComplexMatrix(m.matrix().adjoint(), m.dim());
}

inline Complex trace(const ComplexMatrix& m) { return m.matrix().trace(); }

/// Max |M(i,j) - conj(M(j,i))| over all entries.
inline double hermiticity_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Self-adjoint operator, stored as (M + M^dagger)/2.
///
/// Float drift from I/O is absorbed by the symmetrization; a deviation
/// larger than `tol` means the input was never Hermitian and is rejected.
/// The symmetrized storage is exactly Hermitian, so sums and real multiples
/// stay exactly Hermitian as well.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m, double tol = kHermitianTol)
      : HermitianOperator(m.matrix(), tol, kDefaultMaxDim) {}

  explicit HermitianOperator(const Matrix& m, double tol = kHermitianTol,
                             std::size_t max_dim = kDefaultMaxDim)
      : m_(ComplexMatrix(m, max_dim)), tol_(tol) {
    deviation_ = hermiticity_deviation(m_.matrix());
    if (deviation_ > tol) {
      throw Error(Errc::NotHermitian,
                  "max |M - M^dagger| = " + std::to_string(deviation_) +
                      " exceeds tolerance " + std::to_string(tol));
    }
    m_ = ComplexMatrix(Matrix((m_.matrix() + m_.matrix().adjoint()) * 0.5),
                       max_dim);
  }

  static HermitianOperator identity(std::size_t d) {
    return HermitianOperator(ComplexMatrix::identity(d));
  }
  static HermitianOperator zero(std::size_t d) {
    return HermitianOperator(ComplexMatrix::zero(d));
  }
  static HermitianOperator diag(std::initializer_list<double> values) {
    return HermitianOperator(ComplexMatrix::diag(values));
  }
  static HermitianOperator diag(const std::vector<double>& values) {
    return HermitianOperator(ComplexMatrix::diag(values));
  }

  std::size_t dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_.matrix(); }
  const ComplexMatrix& complex_matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double tolerance() const { return tol_; }
  /// Deviation from hermiticity of the input before symmetrization.
  double input_deviation() const { return deviation_; }

  friend HermitianOperator operator+(const HermitianOperator& a,
                                     const HermitianOperator& b) {
    require_same_dim(a, b);
    return HermitianOperator(Matrix(a.matrix() + b.matrix()));
  }
  friend HermitianOperator operator-(const HermitianOperator& a,
                                     const HermitianOperator& b) {
    require_same_dim(a, b);
    return HermitianOperator(Matrix(a.matrix() - b.matrix()));
  }
  friend HermitianOperator operator-(const HermitianOperator& a) {
    return HermitianOperator(Matrix(-a.matrix()));
  }
  friend HermitianOperator operator*(double s, const HermitianOperator& a) {
    return HermitianOperator(Matrix(s * a.matrix()));
  }
  friend HermitianOperator operator*(const HermitianOperator& a, double s) {
    return s * a;
  }
  friend HermitianOperator operator/(const HermitianOperator& a, double s) {
    return HermitianOperator(Matrix(a.matrix() / s));
  }

  static void require_same_dim(const HermitianOperator& a,
                               const HermitianOperator& b) {
    if (a.dim() != b.dim()) {
      throw Error(Errc::DimMismatch, std::to_string(a.dim()) + " vs " +
                                         std::to_string(b.dim()));
    }
  }

 private:
  ComplexMatrix m_;
  double tol_ = kHermitianTol;
  double deviation_ = 0.0;
};

inline double frobenius_norm(const HermitianOperator& h) {
  return h.matrix().norm();
}

inline double frobenius_distance(const HermitianOperator& a,
                                 const HermitianOperator& b) {
  HermitianOperator::require_same_dim(a, b);
  return (a.matrix() - b.matrix()).norm();
}

/// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct EigenDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }

  Matrix reassemble() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
           eigenvectors.adjoint();
  }

  /// |v_i><v_i| for column i.
  Matrix projector(std::size_t i) const {
    const auto col = eigenvectors.col(static_cast<Eigen::Index>(i));
    return col * col.adjoint();
  }
};

inline EigenDecomposition eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  const double scale = 1.0 + h.matrix().norm();
  const double residual = (out.reassemble() - h.matrix()).norm();
  if (!(residual <= 1e-9 * scale)) {
    throw Error(Errc::ConvergenceFailure,
                "reconstruction residual " + std::to_string(residual));
  }
  return out;
}

inline double min_eigenvalue(const HermitianOperator& h) {
  return eig_hermitian(h).eigenvalues.minCoeff();
}

inline double max_eigenvalue(const HermitianOperator& h) {
  return eig_hermitian(h).eigenvalues.maxCoeff();
}

inline bool is_psd(const HermitianOperator& h, double tol = kPsdTol) {
  return min_eigenvalue(h) >= -tol;
}

inline double operator_norm(const HermitianOperator& h) {
  return eig_hermitian(h).eigenvalues.cwiseAbs().maxCoeff();
}

/// tr[a b]; real for Hermitian arguments.
inline double frobenius_inner(const HermitianOperator& a, const HermitianOperator& b) {
  HermitianOperator::require_same_dim(a, b);
  // tr[AB] = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return a.matrix().cwiseProduct(b.matrix().conjugate()).sum().real();
}

/// Rebuilds a Hermitian operator from a spectrum with the given eigenvalues
/// substituted (e.g. clipped); used by PSD projection and Jordan splits.
inline HermitianOperator from_spectrum(const EigenDecomposition& eig,
                                       const RealVector& eigenvalues) {
  Matrix m = eig.eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
             eig.eigenvectors.adjoint();
  return HermitianOperator(Matrix((m + m.adjoint()) * 0.5));
}

}  // namespace effectkit

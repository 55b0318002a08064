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

#include <cmath>

#include <gtest/gtest.h>

#include "effectkit/effect.hpp"
#include "effectkit/random.hpp"
#include "test_support.hpp"

namespace effectkit {
namespace {

using testing::assemble_bloch;
using testing::bloch_effect;
using testing::bloch_op;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::InvalidArgument;
}

Effect diag_effect(std::initializer_list<double> v, std::string label = {}) {
  return Effect(HermitianOperator::diag(v), std::move(label));
}

TEST(ValidateEffect, Examples) {
  EXPECT_NO_THROW(validate_effect(0.5 * HermitianOperator::identity(2)));
  EXPECT_EQ(code_of([] { validate_effect(HermitianOperator::diag({1.2, 0.0})); }),
            Errc::ExceedsIdentity);
  EXPECT_EQ(code_of([] { validate_effect(HermitianOperator::diag({0.5, -0.1})); }),
            Errc::NotPositive);

  const Effect e = validate_effect(bloch_op(0.5, 0.0, 0.5));
  EXPECT_NEAR(e.min_eigenvalue(), 0.14644660940672627, 1e-12);
  EXPECT_NEAR(e.max_eigenvalue(), 0.8535533905932737, 1e-12);
}

TEST(ValidateEffect, AcceptsRandomSpectra) {
  Rng rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 4);
    const Effect e = random_effect(d, rng);
    const Effect cc = complement(complement(e));
    ASSERT_LE((cc.op().matrix() - e.op().matrix()).cwiseAbs().maxCoeff(), 1e-12);
    const auto n = static_cast<Eigen::Index>(d);
    const Matrix sum = e.op().matrix() + complement(e).op().matrix();
    ASSERT_LE((sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ValidatePovm, Examples) {
  EXPECT_NO_THROW(validate_povm({diag_effect({1.0, 0.0}), diag_effect({0.0, 1.0})}));
  const Effect half(0.5 * HermitianOperator::identity(2));
  EXPECT_NO_THROW(validate_povm({half, half}));
  EXPECT_EQ(code_of([] { validate_povm({bloch_effect(0.0, 0.0, 1.0)}); }),
            Errc::SumNotIdentity);
  EXPECT_EQ(code_of([] {
              validate_povm({diag_effect({1.0, 0.0}), Effect(HermitianOperator::zero(3))});
            }),
            Errc::DimMismatch);
  EXPECT_EQ(code_of([] { validate_povm({}); }), Errc::InvalidArgument);
}

TEST(ValidatePovm, ReportsSumDeviation) {
  const Effect half(0.5 * HermitianOperator::identity(2));
  try {
    validate_povm({half});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("0.707"), std::string::npos) << e.what();
  }
}

TEST(ValidatePovm, RandomPovmsAreValid) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    const Povm p = random_povm(d, d * d, rng);
    EXPECT_EQ(p.size(), d * d);
    EXPECT_LE(p.sum_deviation(), 1e-10);
  }
}

TEST(IsProjection, Examples) {
  EXPECT_TRUE(is_projection(diag_effect({1.0, 0.0})));
  EXPECT_FALSE(is_projection(Effect(0.5 * HermitianOperator::identity(2))));
  EXPECT_TRUE(is_projection(bloch_effect(1.0, 0.0, 0.0)));
}

TEST(Complement, Examples) {
  const Effect p = complement(diag_effect({1.0, 0.0}, "P"));
  EXPECT_EQ(p.op().matrix(), HermitianOperator::diag({0.0, 1.0}).matrix());
  EXPECT_EQ(p.label(), "P'");

  const Effect half(0.5 * HermitianOperator::identity(2));
  EXPECT_EQ(complement(half).op().matrix(), half.op().matrix());

  const Effect n = complement(bloch_effect(0.6, 0.0, 0.8));
  EXPECT_LE((n.op().matrix() - assemble_bloch(-0.6, 0.0, -0.8)).norm(), 1e-15);
}

TEST(BlochToOperator, Examples) {
  EXPECT_EQ(bloch_to_operator({{0.0, 0.0, 1.0}}).matrix(), HermitianOperator::diag({1.0, 0.0}).matrix());
  EXPECT_EQ(bloch_to_operator({{0.0, 0.0, 0.0}}).matrix(), (0.5 * HermitianOperator::identity(2)).matrix());
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  EXPECT_EQ(bloch_to_operator({{1.0, 0.0, 0.0}}).matrix(), plus);
}

TEST(BlochToOperator, MatchesDirectAssembly) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const BlochVector a = random_bloch(rng, 1.5);
    const Matrix m = bloch_to_operator(a).matrix();
    EXPECT_LE((m - assemble_bloch(a[0], a[1], a[2])).norm(), 1e-15);
    if (a.norm() <= 1.0) {
      EXPECT_EQ(m.trace().real(), 1.0);
    }
  }
}

TEST(OperatorToBloch, Examples) {
  EXPECT_EQ(operator_to_bloch(HermitianOperator::diag({1.0, 0.0})), (BlochVector{{0.0, 0.0, 1.0}}));
  EXPECT_EQ(operator_to_bloch(0.5 * HermitianOperator::identity(2)), (BlochVector{{0.0, 0.0, 0.0}}));
  const BlochVector a = operator_to_bloch(bloch_op(0.5, 0.0, 0.5));
  EXPECT_NEAR(a[0], 0.5, 1e-15);
  EXPECT_NEAR(a[1], 0.0, 1e-15);
  EXPECT_NEAR(a[2], 0.5, 1e-15);
}

TEST(OperatorToBloch, Errors) {
  EXPECT_EQ(code_of([] { operator_to_bloch(HermitianOperator::identity(3) / 3.0); }),
            Errc::NotDimTwo);
  EXPECT_EQ(code_of([] { operator_to_bloch(HermitianOperator::identity(2)); }),
            Errc::TraceNotOne);
}

TEST(OperatorToBloch, RoundTrips) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochVector a = random_bloch(rng, 1.0);
    const BlochVector b = operator_to_bloch(bloch_to_operator(a));
    for (std::size_t k = 0; k < 3; ++k) ASSERT_NEAR(a[k], b[k], 1e-12);
  }
}

TEST(OperatorToBloch, UnitNormForPureStates) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXcd psi = random_unit_vector(2, rng);
    const BlochVector a = operator_to_bloch(HermitianOperator(Matrix(psi * psi.adjoint())));
    EXPECT_NEAR(a.norm(), 1.0, 1e-9);
  }
}

TEST(BlochToOperator, PsdIffInsideBall) {
  const double norms[] = {0.0, 0.5, 0.999, 1.0, 1.001, 1.5};
  const BlochVector dirs[] = {{{0.0, 0.0, 1.0}},
                              {{1.0, 0.0, 0.0}},
                              {{0.0, -1.0, 0.0}},
                              {{1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0)}}};
  for (double r : norms) {
    for (const auto& dir : dirs) {
      const HermitianOperator h = bloch_to_operator(r * dir);
      EXPECT_EQ(is_psd(h, 1e-9), r <= 1.0 + 1e-9) << "norm " << r;
    }
  }
}

TEST(SpectralSplit, Examples) {
  const auto parts = spectral_split(diag_effect({1.0, 0.0}, "A"));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].eigenvalue, 0.0);
  EXPECT_LE((parts[0].projector.op().matrix() - HermitianOperator::diag({0.0, 1.0}).matrix()).norm(),
            1e-12);
  EXPECT_EQ(parts[1].eigenvalue, 1.0);
  EXPECT_LE((parts[1].projector.op().matrix() - HermitianOperator::diag({1.0, 0.0}).matrix()).norm(),
            1e-12);
  EXPECT_EQ(parts[0].projector.label(), "A#0");

  const auto flat = spectral_split(Effect(0.5 * HermitianOperator::identity(2)));
  ASSERT_EQ(flat.size(), 1u);
  EXPECT_NEAR(flat[0].eigenvalue, 0.5, 1e-15);
  EXPECT_LE((flat[0].projector.op().matrix() - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(SpectralSplit, MixtureOfTwoProjections) {
  // E = (P + Q)/2 with P along z and Q along x, so c = (1/2, 0, 1/2).
  const HermitianOperator e = 0.5 * (bloch_op(0.0, 0.0, 1.0) + bloch_op(1.0, 0.0, 0.0));
  const auto parts = spectral_split(Effect(e));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_NEAR(parts[0].eigenvalue, 0.14644660940672627, 1e-12);
  EXPECT_NEAR(parts[1].eigenvalue, 0.8535533905932737, 1e-12);
  const double c = std::sqrt(0.5);
  const Matrix r = assemble_bloch(0.5 / c, 0.0, 0.5 / c);
  EXPECT_LE((parts[1].projector.op().matrix() - r).norm(), 1e-10);
}

TEST(SpectralSplit, ProjectorsResolveTheIdentity) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 5);
    const auto n = static_cast<Eigen::Index>(d);
    // Every third trial has a repeated eigenvalue.
    std::vector<double> spec(d);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : spec) s = u(rng);
    if (trial % 3 == 0) spec[1] = spec[0];
    const Matrix unitary = haar_unitary(d, rng);
    Matrix diag = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i, i) = spec[static_cast<std::size_t>(i)];
    const Effect e(HermitianOperator(Matrix(unitary * diag * unitary.adjoint())));

    const auto parts = spectral_split(e);
    if (trial % 3 == 0) {
      ASSERT_LT(parts.size(), d);
    }
    Matrix sum = Matrix::Zero(n, n);
    Matrix rebuilt = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Matrix& p = parts[i].projector.op().matrix();
      ASSERT_TRUE(is_projection(parts[i].projector, 1e-8));
      sum += p;
      rebuilt += parts[i].eigenvalue * p;
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        ASSERT_LE((p * parts[j].projector.op().matrix()).norm(), 1e-8);
      }
    }
    ASSERT_LE((sum - Matrix::Identity(n, n)).norm(), 1e-8);
    ASSERT_LE((rebuilt - e.op().matrix()).norm(), 1e-9);
  }
}

TEST(Effects, ConvexMixturesStayEffects) {
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    const Effect e = random_effect(d, rng);
    const Effect f = random_effect(d, rng);
    const double lambda = u(rng);
    ASSERT_NO_THROW(validate_effect(lambda * e.op() + (1.0 - lambda) * f.op()));
  }
}

}  // namespace
}  // namespace effectkit

// Copyright 2026 The oica Authors.
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

#include <gtest/gtest.h>

#include "oica/error.hpp"
#include "oica/signal_model.hpp"
#include "oica_test_support.hpp"

namespace oica {
namespace {

using testing::gaussian_matrix;
using testing::gram_identity_deviation;
using testing::max_abs;

TEST(Center, ZeroMatrixUnchanged) {
  const RealMatrix x = RealMatrix::Zero(2, 4);
  const Centered c = center(x);
  EXPECT_EQ(c.data, x);
  EXPECT_EQ(c.mean, RealVector::Zero(2));
}

TEST(Center, ConstantRowBecomesZero) {
  RealMatrix x(1, 4);
  x << 1, 1, 1, 1;
  const Centered c = center(x);
  EXPECT_EQ(c.data, RealMatrix::Zero(1, 4));
  EXPECT_DOUBLE_EQ(c.mean[0], 1.0);
}

TEST(Center, HandArithmetic) {
  RealMatrix x(1, 3);
  x << 1, 2, 3;
  const Centered c = center(x);
  EXPECT_DOUBLE_EQ(c.mean[0], 2.0);
  EXPECT_DOUBLE_EQ(c.data(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(c.data(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(c.data(0, 2), 1.0);
}

TEST(Center, RowsSumToZeroAndUncenterRestores) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RealMatrix x = gaussian_matrix(4, 257, seed) * 50.0;
    x.array() += 1e3 * static_cast<double>(seed);
    const Centered c = center(x);
    const double bound = 1e-9 * static_cast<double>(x.cols()) * max_abs(x);
    EXPECT_LE(c.data.rowwise().sum().cwiseAbs().maxCoeff(), bound);
    const RealMatrix back = c.data.colwise() + c.mean;
    EXPECT_LE(max_abs(back - x), 1e-12 * max_abs(x));
  }
}

TEST(Whiten, AlreadyWhiteDataGivesOrthogonalMatrix) {
  // Exactly white: orthonormal rows scaled by sqrt(M), centered.
  const Eigen::Index m = 500;
  RealMatrix q = testing::random_orthonormal_rows(4, m, 3);
  q = q.colwise() - q.rowwise().mean();
  const Whitened pre = whiten(q * std::sqrt(static_cast<double>(m)));
  const Whitened again = whiten(pre.data);
  EXPECT_LE(gram_identity_deviation(again.model.whiten), 1e-6);
  EXPECT_LE(gram_identity_deviation(again.data, static_cast<double>(m)), 1e-8);
}

TEST(Whiten, RecoversUnitCovarianceFromScaledNoise) {
  const RealMatrix noise = gaussian_matrix(2, 20000, 11);
  RealMatrix scaled = noise;
  scaled.row(0) *= 2.0;
  const Centered c = center(scaled);
  const Whitened w = whiten(c.data);
  EXPECT_LE(gram_identity_deviation(w.data, 20000.0), 1e-8);
  EXPECT_LE(max_abs(w.data - w.model.whiten * c.data), 1e-12);
  // Covariance is close to diag(4, 1).
  EXPECT_NEAR(w.model.eigenvalues[0], 4.0, 0.15);
  EXPECT_NEAR(w.model.eigenvalues[1], 1.0, 0.05);
}

TEST(Whiten, DuplicatedRowsAreRankDeficient) {
  RealMatrix x = gaussian_matrix(3, 100, 5);
  x.row(2) = x.row(0);
  const Centered c = center(x);
  try {
    whiten(c.data);
    FAIL() << "expected RankDeficient";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(Whiten, NeedsMoreSamplesThanChannels) {
  const RealMatrix x = gaussian_matrix(4, 4, 2);
  EXPECT_THROW(whiten(x), Error);
}

TEST(Whiten, ModelInvariantsOnRandomMixtures) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 6);
    const RealMatrix a = gaussian_matrix(n, n, seed * 7);
    const RealMatrix x = a * gaussian_matrix(n, 3000, seed * 13);
    const Whitened w = center_and_whiten(x);
    EXPECT_LE(gram_identity_deviation(w.data, 3000.0), 1e-8) << "seed " << seed;
    const RealMatrix eye = w.model.dewhiten * w.model.whiten;
    EXPECT_LE(max_abs(eye - RealMatrix::Identity(n, n)), 1e-10) << "seed " << seed;
    // Eigenvalues descending, eigenvector signs fixed.
    for (Eigen::Index k = 1; k < n; ++k)
      EXPECT_GE(w.model.eigenvalues[k - 1], w.model.eigenvalues[k]);
  }
}

TEST(Whiten, SignConventionIsDeterministic) {
  const RealMatrix x = gaussian_matrix(3, 400, 21);
  const Whitened a = center_and_whiten(x);
  const Whitened b = center_and_whiten(x);
  EXPECT_EQ(a.model.whiten, b.model.whiten);
  // Largest-magnitude entry of each eigenvector (row of V up to scale) is positive.
  for (Eigen::Index k = 0; k < 3; ++k) {
    Eigen::Index pivot = 0;
    a.model.whiten.row(k).cwiseAbs().maxCoeff(&pivot);
    EXPECT_GT(a.model.whiten(k, pivot), 0.0);
  }
}

TEST(ComposeUnmixing, IdentityCases) {
  WhiteningModel model;
  model.whiten = RealMatrix::Identity(3, 3);
  EXPECT_EQ(compose_unmixing(RealMatrix::Identity(3, 3), model), RealMatrix::Identity(3, 3));
  const RealMatrix v = gaussian_matrix(3, 3, 4);
  model.whiten = v;
  EXPECT_EQ(compose_unmixing(RealMatrix::Identity(3, 3), model), v);
}

TEST(ComposeUnmixing, MatchesTwoStepApplication) {
  const RealMatrix x = gaussian_matrix(3, 3, 8) * gaussian_matrix(3, 1000, 9);
  const Whitened w = center_and_whiten(x);
  const RealMatrix w_white = gaussian_matrix(3, 3, 10);
  const RealMatrix direct = compose_unmixing(w_white, w.model) * center(x).data;
  const RealMatrix two_step = w_white * w.data;
  EXPECT_LE(max_abs(direct - two_step), 1e-10 * std::max(1.0, max_abs(two_step)));
}

TEST(ComposeUnmixing, DimensionMismatch) {
  WhiteningModel model;
  model.whiten = RealMatrix::Identity(3, 3);
  try {
    compose_unmixing(RealMatrix::Identity(2, 2), model);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Center, RejectsNonFinite) {
  RealMatrix x = RealMatrix::Ones(2, 3);
  x(1, 1) = std::nan("");
  EXPECT_THROW(center(x), Error);
}

}  // namespace
}  // namespace oica

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

#include <cmath>

#include "oica/contrast.hpp"
#include "oica/error.hpp"
#include "oica/ica_reference.hpp"
#include "oica/signal_model.hpp"
#include "oica/sourcegen.hpp"
#include "oica_test_support.hpp"

namespace oica {
namespace {

using testing::max_abs;

// Unit-variance sources used directly as whitened data: row 0 Laplace, rest Gaussian.
RealMatrix laplace_plus_gaussians(Eigen::Index n, std::size_t m, std::uint64_t seed) {
  SourceSpec spec{{1.0}, static_cast<std::size_t>(n - 1), m, seed, true};
  return gen_dataset(spec).observed;
}

double abs_cosine(const RealVector& a, const RealVector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

TEST(FastIcaOneUnit, SourceDirectionIsAFixedPoint) {
  const RealMatrix s = laplace_plus_gaussians(3, 100000, 1);
  const RealVector e0 = RealVector::Unit(3, 0);
  const OneUnitResult r = fastica_one_unit(e0, s, RealMatrix(), 1, 1e-6);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_LE((r.w.cwiseAbs() - e0).cwiseAbs().maxCoeff(), 5e-2);
}

TEST(FastIcaOneUnit, CollapsedStartIsDegenerate) {
  const RealMatrix s = laplace_plus_gaussians(3, 1000, 2);
  RealMatrix w(1, 3);
  w << 0.6, 0.8, 0.0;
  const RealMatrix e = w.transpose() * w;
  try {
    fastica_one_unit(RealVector(w.row(0).transpose() * 2.5), s, e, 30, 1e-6);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DegenerateCandidate);
  }
}

TEST(FastIcaOneUnit, NegatedFixedPointConverges) {
  const RealMatrix xw = center_and_whiten(laplace_plus_gaussians(3, 20000, 3)).data;
  const OneUnitResult first = fastica_one_unit(RealVector::Ones(3), xw, RealMatrix(), 200, 1e-10);
  ASSERT_TRUE(first.converged);
  const OneUnitResult again = fastica_one_unit(-first.w, xw, RealMatrix(), 200, 1e-8);
  EXPECT_TRUE(again.converged);
  EXPECT_LE(again.iterations, 2u);
  EXPECT_GT(abs_cosine(again.w, first.w), 1.0 - 1e-12);
}

TEST(FastIcaOneUnit, UnitNormAndOrthogonalToProjector) {
  const RealMatrix xw = center_and_whiten(laplace_plus_gaussians(4, 5000, 4)).data;
  const RealMatrix w = testing::random_orthonormal_rows(2, 4, 5);
  const RealMatrix e = w.transpose() * w;
  for (std::size_t k : {1u, 3u, 30u}) {
    const OneUnitResult r = fastica_one_unit(RealVector::Ones(4), xw, e, k, 1e-6);
    EXPECT_NEAR(r.w.norm(), 1.0, 1e-12);
    EXPECT_LE((e * r.w).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE(r.iterations, k);
    EXPECT_LE((r.y - xw.transpose() * r.w).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(FastIcaOneUnit, ShapeErrors) {
  const RealMatrix xw = testing::gaussian_matrix(3, 50, 1);
  EXPECT_THROW(fastica_one_unit(RealVector::Ones(2), xw, RealMatrix(), 5, 1e-6), Error);
  EXPECT_THROW(fastica_one_unit(RealVector::Ones(3), xw, RealMatrix::Identity(2, 2), 5, 1e-6),
               Error);
}

// See the matching fast test: N = 8 is where the stopping rule is reliable.
TEST(OrderingIcaReference, PureGaussianStopsImmediately) {
  for (std::uint64_t seed : {1u, 2u}) {
    const Dataset ds = gen_dataset({{}, 8, 100000, seed, false});
    const RealMatrix xw = center_and_whiten(ds.observed).data;
    SeparationOptions opt;
    opt.candidates = 20;
    opt.seed = seed;
    const SeparationResult r = ordering_ica_reference(xw, opt);
    EXPECT_EQ(r.extracted(), 0u) << seed;
    EXPECT_EQ(r.stop_index, 1u);
    EXPECT_LT(r.stop_upsilon, gaussianity_threshold(8, 1, 100000));
    EXPECT_EQ(r.components.size(), 1u);
  }
}

TEST(OrderingIcaReference, FindsLaplaceDirection) {
  const Dataset ds = gen_dataset({{1.0}, 1, 10000, 21, false});
  const Whitened w = center_and_whiten(ds.observed);
  SeparationOptions opt;
  opt.candidates = 20;
  opt.seed = 4;
  const SeparationResult r = ordering_ica_reference(w.data, opt);
  ASSERT_GE(r.extracted(), 1u);
  const RealMatrix unmix = compose_unmixing(r.w, w.model);
  const RealMatrix truth = ds.mixing->inverse();
  EXPECT_GT(abs_cosine(unmix.row(0).transpose(), truth.row(0).transpose()), 0.99);
}

TEST(OrderingIcaReference, DeterministicAndOrthonormal) {
  const Dataset ds = gen_dataset({{0.5, 1.0, 6.0}, 1, 4000, 8, false});
  const RealMatrix xw = center_and_whiten(ds.observed).data;
  SeparationOptions opt;
  opt.candidates = 1;
  opt.seed = 11;
  const SeparationResult a = ordering_ica_reference(xw, opt);
  const SeparationResult b = ordering_ica_reference(xw, opt);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.upsilon, b.upsilon);
  EXPECT_EQ(a.stop_index, b.stop_index);

  opt.candidates = 5;
  const SeparationResult c = ordering_ica_reference(xw, opt);
  ASSERT_GE(c.extracted(), 2u);
  EXPECT_LE(testing::gram_identity_deviation(c.w), 1e-8);
  const RealMatrix y = c.w * xw;
  const double m = static_cast<double>(xw.cols());
  EXPECT_LE(y.rowwise().sum().cwiseAbs().maxCoeff() / m, 1e-6);
  EXPECT_LE(testing::gram_identity_deviation(y, m), 1e-6);
  EXPECT_EQ(c.upsilon.size(), c.extracted());
  EXPECT_EQ(c.components.size(), std::min<std::size_t>(c.stop_index, 4));
}

TEST(OrderingIcaReference, FullSpaceInitAlsoSeparates) {
  const Dataset ds = gen_dataset({{0.5, 8.0}, 1, 5000, 9, false});
  const RealMatrix xw = center_and_whiten(ds.observed).data;
  SeparationOptions opt;
  opt.candidates = 10;
  opt.reference_init = ReferenceInit::FullSpace;
  const SeparationResult r = ordering_ica_reference(xw, opt);
  ASSERT_GE(r.extracted(), 2u);
  EXPECT_LE(testing::gram_identity_deviation(r.w), 1e-8);
  // The two strongly non-Gaussian sources come first.
  EXPECT_GT(r.upsilon[1], 0.3);
}

TEST(OrderingIcaReference, RejectsBadOptions) {
  const RealMatrix xw = center_and_whiten(testing::gaussian_matrix(2, 100, 1)).data;
  SeparationOptions opt;
  opt.candidates = 0;
  EXPECT_THROW(ordering_ica_reference(xw, opt), Error);
  opt.candidates = 1;
  opt.max_iterations = 0;
  EXPECT_THROW(ordering_ica_reference(xw, opt), Error);
  opt.max_iterations = 30;
  opt.tolerance = -1.0;
  EXPECT_THROW(ordering_ica_reference(xw, opt), Error);
}

}  // namespace
}  // namespace oica

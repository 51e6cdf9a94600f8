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
#include <numbers>

#include "oica/contrast.hpp"
#include "oica/error.hpp"
#include "oica/ica_fast.hpp"
#include "oica/ica_reference.hpp"
#include "oica/rng.hpp"
#include "oica/signal_model.hpp"
#include "oica/sourcegen.hpp"
#include "oica_test_support.hpp"

namespace oica {
namespace {

using testing::max_abs;

void expect_basis_identities(const ComplementBasis& cb, const RealMatrix& w, std::size_t n) {
  const auto d = static_cast<Eigen::Index>(cb.reduced_dim);
  const auto ni = static_cast<Eigen::Index>(n);
  ASSERT_EQ(cb.g.rows(), d);
  ASSERT_EQ(cb.g.cols(), ni);
  EXPECT_LE(max_abs(cb.g * cb.g.transpose() - RealMatrix::Identity(d, d)), 1e-9);
  if (w.rows() > 0) EXPECT_LE(max_abs(cb.g * w.transpose()), 1e-9);
  const RealMatrix proj = RealMatrix::Identity(ni, ni) - w.transpose() * w;
  EXPECT_LE(max_abs(cb.g.transpose() * cb.g - proj), 1e-9);
}

TEST(ComplementBasis, EmptyWIsIdentity) {
  const ComplementBasis cb = complement_basis(RealMatrix(0, 4), 4);
  EXPECT_EQ(cb.g, RealMatrix::Identity(4, 4));
  EXPECT_EQ(cb.reduced_dim, 4u);
  EXPECT_FALSE(cb.used_fallback);
}

TEST(ComplementBasis, LeadingRowsSingularUsesFallback) {
  RealMatrix w(1, 3);
  w << 1, 0, 0;
  try {
    complement_basis(w, 3, 1e-10, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllConditionedComplement);
  }
  const ComplementBasis cb = complement_basis(w, 3);
  EXPECT_TRUE(cb.used_fallback);
  expect_basis_identities(cb, w, 3);
}

TEST(ComplementBasis, RandomOrthonormalW) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const RealMatrix w = testing::random_orthonormal_rows(2, 5, seed);
    const ComplementBasis cb = complement_basis(w, 5);
    EXPECT_EQ(cb.reduced_dim, 3u);
    expect_basis_identities(cb, w, 5);
  }
  for (Eigen::Index k = 1; k < 6; ++k) {
    const RealMatrix w = testing::random_orthonormal_rows(k, 6, 100 + k);
    expect_basis_identities(complement_basis(w, 6), w, 6);
  }
}

TEST(ComplementBasis, CoordinateAlignedWsAllHandled) {
  // Every subset of coordinate axes as W; many make the leading rows singular.
  const std::size_t n = 4;
  for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
    RealMatrix w(0, 4);
    for (std::size_t k = 0; k < n; ++k) {
      if (!(mask & (1u << k))) continue;
      w.conservativeResize(w.rows() + 1, Eigen::NoChange);
      w.row(w.rows() - 1) = RealVector::Unit(4, static_cast<Eigen::Index>(k)).transpose();
    }
    expect_basis_identities(complement_basis(w, n), w, n);
  }
}

TEST(ComplementBasis, Errors) {
  EXPECT_THROW(complement_basis(RealMatrix::Identity(3, 3), 3), Error);
  EXPECT_THROW(complement_basis(RealMatrix::Zero(1, 2), 3), Error);
}

TEST(SymInvSqrt, Cases) {
  EXPECT_LE(max_abs(sym_inv_sqrt(RealMatrix::Identity(3, 3), 1e-10) - RealMatrix::Identity(3, 3)),
            1e-15);
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 4;
  d(1, 1) = 9;
  RealMatrix expect = RealMatrix::Zero(2, 2);
  expect(0, 0) = 0.5;
  expect(1, 1) = 1.0 / 3.0;
  EXPECT_LE(max_abs(sym_inv_sqrt(d, 1e-10) - expect), 1e-15);

  const double t = 0.7;
  RealMatrix q(2, 2);
  q << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  RealMatrix s = q * d * q.transpose();
  s = 0.5 * (s + s.transpose()).eval();
  const RealMatrix r = sym_inv_sqrt(s, 1e-10);
  EXPECT_LE(max_abs(r * s * r - RealMatrix::Identity(2, 2)), 1e-10);
  EXPECT_EQ(r, r.transpose());
}

TEST(SymInvSqrt, Errors) {
  RealMatrix s = RealMatrix::Identity(2, 2);
  s(1, 1) = 1e-12;
  try {
    sym_inv_sqrt(s, 1e-10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllConditionedComplement);
  }
  RealMatrix ns = RealMatrix::Identity(2, 2);
  ns(0, 1) = 1e-3;
  EXPECT_THROW(sym_inv_sqrt(ns, 1e-10), Error);
}

TEST(BatchNewtonStep, SingleRowMatchesOneUnitUpdate) {
  const Dataset ds = gen_dataset({{1.0, 4.0}, 1, 5000, 2, false});
  const RealMatrix xw = center_and_whiten(ds.observed).data;
  Rng rng(3);
  RealVector w0 = rng.normal_vector(3);
  w0.normalize();
  const OneUnitResult one = fastica_one_unit(w0, xw, RealMatrix(), 1, 0.0);
  const RealMatrix b = batch_newton_step(RealMatrix(w0.transpose()), xw);
  EXPECT_LE((b.row(0).transpose() - one.w).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BatchNewtonStep, IdenticalRowsStayIdentical) {
  const RealMatrix xw = center_and_whiten(testing::gaussian_matrix(3, 500, 4)).data;
  RealMatrix b(2, 3);
  b.row(0) << 0.6, 0.0, 0.8;
  b.row(1) = b.row(0);
  const RealMatrix out = batch_newton_step(b, xw);
  EXPECT_EQ(out.row(0), out.row(1));
  EXPECT_NEAR(out.row(0).norm(), 1.0, 1e-12);
}

TEST(BatchNewtonStep, SourceDirectionIsAFixedPoint) {
  const RealMatrix s = gen_dataset({{1.0, 2.0}, 1, 100000, 5, true}).observed;
  const RealMatrix out = batch_newton_step(RealMatrix::Identity(1, 3), s);
  EXPECT_LE((out.row(0).cwiseAbs() - RealMatrix::Identity(1, 3)).cwiseAbs().maxCoeff(), 5e-2);
}

TEST(BatchNewtonStep, ZeroDataMakesDegenerateRow) {
  try {
    batch_newton_step(RealMatrix::Zero(1, 2), RealMatrix::Zero(2, 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateRow);
  }
}

TEST(PartitionConverged, Cases) {
  const RealMatrix b = testing::random_orthonormal_rows(3, 4, 9);
  auto same = partition_converged(b, b, 1e-6);
  EXPECT_TRUE(same.still_active.empty());
  EXPECT_EQ(same.newly_converged, (std::vector<std::size_t>{0, 1, 2}));
  auto flipped = partition_converged(-b, b, 1e-6);
  EXPECT_EQ(flipped.newly_converged.size(), 3u);

  // Rotate row 1 by theta in the plane of rows 1 and 2: chord 2 sin(theta/2).
  const double eps = 1e-3;
  for (double theta : {1e-2, 0.5, std::numbers::pi / 2}) {
    RealMatrix moved = b;
    moved.row(1) = std::cos(theta) * b.row(1) + std::sin(theta) * b.row(2);
    ASSERT_GT(2 * std::sin(theta / 2), eps);
    ASSERT_GT(2 * std::cos(theta / 2), eps);
    const auto p = partition_converged(moved, b, eps);
    EXPECT_EQ(p.still_active, (std::vector<std::size_t>{1}));
    EXPECT_EQ(p.newly_converged, (std::vector<std::size_t>{0, 2}));
  }
}

// The reduced-coordinate trajectory mapped back through G^T equals the
// projected full-space trajectory step by step.
TEST(OrderingIcaFast, TrajectoryMatchesProjectedUpdate) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(seed % 4);
    const Dataset ds = gen_dataset({std::vector<double>(static_cast<std::size_t>(n), 0.7), 0,
                                    4000, seed, false});
    const RealMatrix xw = center_and_whiten(ds.observed).data;
    const RealMatrix w = testing::random_orthonormal_rows(2, n, seed + 50);
    const RealMatrix e = w.transpose() * w;
    const ComplementBasis cb = complement_basis(w, static_cast<std::size_t>(n));
    const RealMatrix xr = cb.g * xw;

    Rng rng(seed);
    RealVector b0 = rng.normal_vector(n - 2);
    b0.normalize();
    RealMatrix b = b0.transpose();
    for (std::size_t t = 1; t <= 6; ++t) {
      b = batch_newton_step(b, xr);
      const OneUnitResult full = fastica_one_unit(cb.g.transpose() * b0, xw, e, t, 0.0);
      const RealVector mapped = cb.g.transpose() * b.row(0).transpose();
      EXPECT_LE((mapped - full.w).cwiseAbs().maxCoeff(), 1e-9) << "seed " << seed << " t " << t;
      if (full.iterations < t) break;  // reached an exact fixed point
    }
  }
}

TEST(OrderingIcaFast, MatchesReferenceWithMatchedStarts) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Dataset ds = gen_dataset({{0.5, 1.0, 4.0}, 1, 5000, seed, false});
    const RealMatrix xw = center_and_whiten(ds.observed).data;
    SeparationOptions opt;
    opt.candidates = 5;
    opt.seed = seed;
    const SeparationResult fast = ordering_ica_fast(xw, opt);
    const SeparationResult ref = ordering_ica_reference(xw, opt);
    EXPECT_EQ(fast.stop_index, ref.stop_index);
    EXPECT_LE(testing::signless_row_deviation(fast.w, ref.w), 1e-6);
    ASSERT_EQ(fast.components.size(), ref.components.size());
    // Several candidates usually reach the same optimum, so the winning
    // index may differ while the winning value agrees.
    for (std::size_t k = 0; k < fast.components.size(); ++k)
      EXPECT_NEAR(fast.components[k].upsilon, ref.components[k].upsilon, 1e-7);
  }
}

// The stopping rule is conservative from about N = 8 upward; at small N it
// fires late on a sizeable share of seeds.
TEST(OrderingIcaFast, PureGaussianStopsImmediately) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Dataset ds = gen_dataset({{}, 8, 100000, seed, false});
    SeparationOptions opt;
    opt.candidates = 20;
    opt.seed = seed;
    const SeparationResult r = ordering_ica_fast(center_and_whiten(ds.observed).data, opt);
    EXPECT_EQ(r.extracted(), 0u);
    EXPECT_EQ(r.stop_index, 1u);
  }
}

TEST(OrderingIcaFast, DisabledGaussianityTestExtractsEverything) {
  const Dataset ds = gen_dataset({{}, 5, 20000, 4, false});
  const RealMatrix xw = center_and_whiten(ds.observed).data;
  SeparationOptions opt;
  opt.candidates = 5;
  opt.gaussianity_test = false;
  for (const Algorithm a : {Algorithm::Fast, Algorithm::Reference}) {
    const SeparationResult r = separate(a, xw, opt);
    EXPECT_EQ(r.extracted(), 5u);
    EXPECT_EQ(r.stop_index, 6u);
    EXPECT_LE(testing::gram_identity_deviation(r.w), 1e-8);
  }
}

TEST(OrderingIcaFast, FindsLaplaceDirection) {
  const Dataset ds = gen_dataset({{1.0}, 1, 10000, 21, false});
  const Whitened w = center_and_whiten(ds.observed);
  SeparationOptions opt;
  opt.candidates = 20;
  const SeparationResult r = ordering_ica_fast(w.data, opt);
  ASSERT_GE(r.extracted(), 1u);
  const RealVector u = compose_unmixing(r.w, w.model).row(0).transpose();
  const RealVector v = ds.mixing->inverse().row(0).transpose();
  EXPECT_GT(std::abs(u.dot(v)) / (u.norm() * v.norm()), 0.99);
}

TEST(OrderingIcaFast, OutputInvariantsAndDeterminism) {
  const Dataset ds = gen_dataset({{0.5, 0.7, 1.0, 4.0, 8.0}, 1, 5000, 3, false});
  const RealMatrix xw = center_and_whiten(ds.observed).data;
  SeparationOptions opt;
  opt.candidates = 8;
  opt.seed = 2;
  const SeparationResult a = ordering_ica_fast(xw, opt);
  const SeparationResult b = ordering_ica_fast(xw, opt);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.upsilon, b.upsilon);
  ASSERT_GE(a.extracted(), 3u);
  EXPECT_LE(testing::gram_identity_deviation(a.w), 1e-8);
  for (Eigen::Index r = 0; r < a.w.rows(); ++r) EXPECT_NEAR(a.w.row(r).norm(), 1.0, 1e-10);
  for (const ComponentDiagnostics& d : a.components)
    EXPECT_EQ(d.converged + d.unconverged + d.degenerate, opt.candidates);
  for (std::size_t k = 0; k < a.extracted(); ++k)
    EXPECT_GE(a.upsilon[k], gaussianity_threshold(6, k + 1, 5000));
}

TEST(OrderingIcaFast, UnconvergedRowsKeptUnlessStrict) {
  const Dataset ds = gen_dataset({{0.5, 1.0, 4.0}, 0, 3000, 6, false});
  const RealMatrix xw = center_and_whiten(ds.observed).data;
  SeparationOptions opt;
  opt.candidates = 4;
  opt.max_iterations = 1;
  opt.tolerance = 0.0;
  const SeparationResult kept = ordering_ica_fast(xw, opt);
  ASSERT_FALSE(kept.components.empty());
  EXPECT_EQ(kept.components[0].unconverged, 4u);
  EXPECT_FALSE(kept.components[0].winner_converged);

  opt.strict_paper = true;
  try {
    ordering_ica_fast(xw, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCandidates);
  }
}

TEST(OrderingIcaFast, SeparateDispatches) {
  const Dataset ds = gen_dataset({{1.0, 6.0}, 0, 3000, 7, false});
  const RealMatrix xw = center_and_whiten(ds.observed).data;
  SeparationOptions opt;
  opt.candidates = 3;
  EXPECT_EQ(separate(Algorithm::Fast, xw, opt).w, ordering_ica_fast(xw, opt).w);
  EXPECT_EQ(separate(Algorithm::Reference, xw, opt).w, ordering_ica_reference(xw, opt).w);
  EXPECT_STREQ(algorithm_name(Algorithm::Fast), "fast");
  EXPECT_STREQ(algorithm_name(Algorithm::Reference), "reference");
}

}  // namespace
}  // namespace oica

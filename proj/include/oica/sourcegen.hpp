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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oica/matrix.hpp"
#include "oica/rng.hpp"
#include "oica/signal_model.hpp"

namespace oica {

/// Recipe for a synthetic dataset: one generalized-Gaussian source per
/// shape parameter, followed by gaussian_count standard-normal sources.
struct SourceSpec {
  std::vector<double> rhos;
  std::size_t gaussian_count = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Test hook: use A = I instead of a random mixing matrix.
  bool identity_mixing = false;
};

/// Scale giving the generalized Gaussian with shape rho unit variance.
double gg_beta(double rho);

/// Closed-form excess kurtosis Gamma(5/r)Gamma(1/r)/Gamma(3/r)^2 - 3.
double gg_kurtosis(double rho);

/// M i.i.d. draws s * beta * g^(1/rho), s = +-1, g ~ Gamma(1/rho, 1). The
/// gamma variate is produced by inverting its CDF, one uniform per draw.
RealVector gg_sample(double rho, std::size_t m, Rng& rng);

/// 2 * 2^(k/4) for k = -10..-1, 1..10, ascending.
std::vector<double> paper_rho_grid();

/// X = A S with A i.i.d. standard normal, redrawn until its condition number
/// is below 1e6 (at most 100 attempts, else MixingGenerationFailed).
Dataset gen_dataset(const SourceSpec& spec);

/// Source indices sorted by upsilon(kurtosis) descending; ties keep the
/// generation order. This is the ranking separated components should follow.
std::vector<std::size_t> ground_truth_order(const std::vector<double>& kurtoses);

/// Mixing matrix with its columns permuted into ground-truth order.
RealMatrix sorted_mixing(const RealMatrix& mixing, const std::vector<double>& kurtoses);

}  // namespace oica

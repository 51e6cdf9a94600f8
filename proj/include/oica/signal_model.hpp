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

#include <optional>
#include <vector>

#include "oica/matrix.hpp"

namespace oica {

inline constexpr double kDefaultEigFloor = 1e-12;

/// Affine map from raw signals to zero-mean, unit-covariance signals:
/// x_white = whiten * (x - mean).
struct WhiteningModel {
  RealVector mean;
  RealMatrix whiten;
  RealMatrix dewhiten;
  /// Covariance eigenvalues, descending.
  RealVector eigenvalues;
};

struct Centered {
  RealMatrix data;
  RealVector mean;
};

struct Whitened {
  RealMatrix data;
  WhiteningModel model;
};

/// Observed signals plus optional ground truth for synthetic data.
struct Dataset {
  RealMatrix observed;
  std::optional<RealMatrix> mixing;
  std::optional<RealMatrix> sources;
  std::optional<std::vector<double>> true_kurtoses;
};

/// Subtracts the per-row mean.
Centered center(const RealMatrix& x);

/// Symmetric-eigendecomposition whitening of centered data, using the
/// divisor M for the sample covariance. Eigenvalues are ordered descending
/// and each eigenvector's largest-magnitude entry is made positive.
///
/// Throws RankDeficient when an eigenvalue falls below
/// eig_floor * (largest eigenvalue), and InvalidArgument unless M > N.
/// The returned model has a zero mean; use center_and_whiten to carry the
/// removed mean along.
Whitened whiten(const RealMatrix& centered, double eig_floor = kDefaultEigFloor);

/// center followed by whiten; the model's mean is the removed row mean.
Whitened center_and_whiten(const RealMatrix& x, double eig_floor = kDefaultEigFloor);

/// Maps a separating matrix from whitened coordinates back to raw signals:
/// returns w_white * model.whiten.
RealMatrix compose_unmixing(const RealMatrix& w_white, const WhiteningModel& model);

}  // namespace oica

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
#include <span>

#include "oica/matrix.hpp"

namespace oica {

/// Fourth-moment kurtosis estimate of a sample assumed zero-mean and
/// unit-variance: sum(y^4)/M - 3.
struct KurtosisEstimate {
  double alpha;
};

KurtosisEstimate kurtosis_alpha(std::span<const double> y);

/// Same estimate for every row of z.
RealVector kurtosis_alpha_rows(const RealMatrix& z);

/// Non-Gaussianity contrast alpha - 2 log(alpha/2 + 1). Zero at alpha = 0,
/// positive elsewhere on its domain. Throws DomainError for
/// alpha <= -2 + 1e-12.
double upsilon(double alpha);

/// Threshold below which the best candidate at component index i
/// (1-based) is declared Gaussian, together with all remaining components:
/// 2 (N - i + 2)(N - i + 1) / M.
double gaussianity_threshold(std::size_t n, std::size_t i, std::size_t m);

}  // namespace oica

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

#include "oica/contrast.hpp"

#include <cmath>
#include <string>

#include "oica/error.hpp"

namespace oica {

KurtosisEstimate kurtosis_alpha(std::span<const double> y) {
  if (y.empty()) throw Error(ErrorCode::InvalidArgument, "kurtosis of an empty sample");
  double acc = 0.0;
  for (double v : y) {
    const double sq = v * v;
    acc += sq * sq;
  }
  return {acc / static_cast<double>(y.size()) - 3.0};
}

RealVector kurtosis_alpha_rows(const RealMatrix& z) {
  if (z.cols() < 1) throw Error(ErrorCode::InvalidArgument, "kurtosis of an empty sample");
  return (z.array().square().square().rowwise().sum() / static_cast<double>(z.cols())) - 3.0;
}

double upsilon(double alpha) {
  if (!(alpha > -2.0 + 1e-12))
    throw Error(ErrorCode::DomainError,
                "kurtosis estimate " + std::to_string(alpha) + " is at or below -2");
  return alpha - 2.0 * std::log1p(alpha / 2.0);
}

double gaussianity_threshold(std::size_t n, std::size_t i, std::size_t m) {
  if (i < 1 || i > n || m < 1)
    throw Error(ErrorCode::InvalidArgument, "gaussianity_threshold needs 1 <= i <= N and M >= 1");
  const double rest = static_cast<double>(n - i);
  return 2.0 * (rest + 2.0) * (rest + 1.0) / static_cast<double>(m);
}

}  // namespace oica

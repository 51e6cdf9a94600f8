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
#include <string>
#include <vector>

#include "oica/matrix.hpp"

namespace oica {

inline constexpr double kDefaultOrderingTau = 0.1;

/// Fraction of entries of P = W A (after flipping each row whose
/// largest-magnitude entry is negative) that deviate from the identity by
/// more than tau. A's columns must already be in ground-truth order.
/// W may have fewer than N rows after an early stop; missing rows count as zero.
double ordering_error(const RealMatrix& w, const RealMatrix& a, double tau = kDefaultOrderingTau);

/// 1 - |u.v| / (|u||v|). Throws ZeroVector on a zero input.
double cosine_divergence(std::span<const double> u, std::span<const double> v);

struct FluctuationGroup {
  std::string name;
  std::size_t first = 0;  // 0-based, inclusive
  std::size_t last = 0;   // exclusive
  double mean = 0.0;
};

struct FluctuationReport {
  std::vector<double> per_component;
  std::vector<FluctuationGroup> groups;
};

/// Mean cosine divergence of corresponding rows over all ordered pairs of
/// runs. Groups are "all", then bands of band_size ranks: "top", "mid",
/// "rest" (empty bands are omitted).
FluctuationReport fluctuation(const std::vector<RealMatrix>& runs, std::size_t band_size = 20);

}  // namespace oica

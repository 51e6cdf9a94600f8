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

#include "oica/matrix.hpp"
#include "oica/separation.hpp"

namespace oica {

struct OneUnitResult {
  RealVector w;
  RealVector y;
  std::size_t iterations = 0;
  bool converged = false;
};

/// One-unit kurtosis FastICA in the deflation form: project w0 off the span
/// encoded by the projector e, normalize, then repeat the Newton update
/// w <- X (y.^3)^T / M - 3 w followed by projection and normalization until
/// min(|w - w_prev|, |w + w_prev|) <= eps or K updates have been made.
///
/// Pass an empty (0x0) e when nothing has been extracted yet. Throws
/// DegenerateCandidate if w collapses below norm 1e-12 after projection.
OneUnitResult fastica_one_unit(const RealVector& w0, const RealMatrix& xw, const RealMatrix& e,
                               std::size_t max_iterations, double eps);

/// Deflationary ordering ICA: for each component index draw L starting
/// vectors, run fastica_one_unit on each and keep the candidate with the
/// largest contrast, stopping at the first index whose best candidate fails
/// the Gaussianity test. Single-threaded.
SeparationResult ordering_ica_reference(const RealMatrix& xw, const SeparationOptions& options);

}  // namespace oica

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

namespace oica {

enum class Algorithm { Fast, Reference };

const char* algorithm_name(Algorithm a) noexcept;

/// How the reference algorithm draws its starting vectors.
enum class ReferenceInit {
  /// b0 is drawn in the reduced coordinates of the complement basis G and
  /// mapped to w0 = G^T b0, using the same random streams as the fast
  /// algorithm. Both algorithms then start from identical directions.
  MatchedComplement,
  /// w0 is drawn as an N-dimensional standard normal vector.
  FullSpace,
};

struct SeparationOptions {
  std::size_t candidates = 100;        // L
  std::size_t max_iterations = 30;     // K
  double tolerance = 1e-6;             // eps
  std::uint64_t seed = 0;
  /// Fast algorithm only: drop candidates still unconverged after K
  /// iterations instead of letting them compete in the argmax.
  bool strict_paper = false;
  ReferenceInit reference_init = ReferenceInit::MatchedComplement;
  /// Minimum eigenvalue of F~F~^T before the complement basis switches to
  /// pivoted row selection.
  double complement_floor = 1e-10;
  /// When false, every component is extracted and the threshold is only
  /// reported, never acted on.
  bool gaussianity_test = true;
};

struct ComponentDiagnostics {
  /// Fast: iterations of the batch loop. Reference: iterations of the winner.
  std::size_t iterations = 0;
  std::size_t converged = 0;
  std::size_t unconverged = 0;
  std::size_t degenerate = 0;
  /// Candidate index l (0-based) of the winner.
  std::size_t winner = 0;
  bool winner_converged = false;
  double upsilon = 0.0;
  double seconds = 0.0;
};

/// Output of either separation algorithm. w holds the accepted rows in
/// whitened coordinates, in extraction order; it may have zero rows.
struct SeparationResult {
  RealMatrix w;
  std::vector<double> upsilon;
  /// One entry per attempted component, including the one that failed the
  /// Gaussianity test (if any).
  std::vector<ComponentDiagnostics> components;
  /// 1-based index i at which the Gaussianity test fired, or N + 1.
  std::size_t stop_index = 0;
  /// Best contrast at the stopping index; NaN when every component passed.
  double stop_upsilon = 0.0;
  double total_seconds = 0.0;

  std::size_t extracted() const { return static_cast<std::size_t>(w.rows()); }
};

/// Runs the requested algorithm on whitened data.
SeparationResult separate(Algorithm algorithm, const RealMatrix& xw,
                          const SeparationOptions& options);

/// Random stream for candidate l at component index i (both 0-based).
/// Shared by both algorithms.
class Rng;
Rng candidate_stream(std::uint64_t seed, std::size_t component, std::size_t candidate);

}  // namespace oica

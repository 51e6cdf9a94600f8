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

#include "oica/separation.hpp"

#include "oica/ica_fast.hpp"
#include "oica/ica_reference.hpp"
#include "oica/rng.hpp"

namespace oica {

const char* algorithm_name(Algorithm a) noexcept {
  return a == Algorithm::Fast ? "fast" : "reference";
}

Rng candidate_stream(std::uint64_t seed, std::size_t component, std::size_t candidate) {
  return Rng(seed).child(component).child(candidate);
}

SeparationResult separate(Algorithm algorithm, const RealMatrix& xw,
                          const SeparationOptions& options) {
  return algorithm == Algorithm::Fast ? ordering_ica_fast(xw, options)
                                      : ordering_ica_reference(xw, options);
}

}  // namespace oica

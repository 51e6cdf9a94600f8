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

#include <cstdint>
#include <random>

#include "oica/matrix.hpp"

namespace oica {

/// Seedable random stream built on std::mt19937_64, whose output sequence is
/// fixed by the C++ standard. Normal and uniform variates are produced by our
/// own transforms so draws are identical on every platform.
///
/// Streams form a tree: child(k) derives a new independent stream from this
/// stream's key and the index k through the splitmix64 finalizer. The
/// separation algorithms use one child per component index i and, below it,
/// one grandchild per candidate index l.
class Rng {
 public:
  explicit Rng(std::uint64_t key);

  std::uint64_t key() const noexcept { return key_; }
  Rng child(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal via the inverse CDF (exactly one uniform per draw).
  double normal();
  /// +1 or -1 with equal probability.
  double sign();

  RealVector normal_vector(Eigen::Index n);

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace oica

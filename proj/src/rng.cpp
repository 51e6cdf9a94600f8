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

#include "oica/rng.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

namespace oica {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t key) : key_(key), engine_(key) {}

Rng Rng::child(std::uint64_t index) const { return Rng(mix64(key_ ^ mix64(index))); }

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  // 53 random bits centred in their bucket: never 0, never 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * uniform());
}

double Rng::sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

RealVector Rng::normal_vector(Eigen::Index n) {
  RealVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = normal();
  return v;
}

}  // namespace oica

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

#include <chrono>
#include <string>

#include "oica/error.hpp"
#include "oica/matrix.hpp"
#include "oica/separation.hpp"

namespace oica::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void check_separation_inputs(const RealMatrix& xw, const SeparationOptions& options) {
  require_valid(xw, "whitened signal matrix");
  if (options.candidates < 1)
    throw Error(ErrorCode::InvalidArgument, "number of candidates L must be >= 1");
  if (options.max_iterations < 1)
    throw Error(ErrorCode::InvalidArgument, "iteration limit K must be >= 1");
  if (!(options.tolerance >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
}

/// Sign-invariant step length between successive unit vectors.
template <class A, class B>
double sign_invariant_step(const A& now, const B& prev) {
  return std::min((now - prev).norm(), (now + prev).norm());
}

inline constexpr double kDegenerateNorm = 1e-12;

}  // namespace oica::detail

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

#include "oica/runtime.hpp"

#include <cstdlib>
#include <string>

#include <Eigen/Core>

#include "oica/error.hpp"

namespace oica {

void set_thread_limit(int threads) {
  if (threads < 0) throw Error(ErrorCode::InvalidArgument, "thread limit must be >= 0");
#ifdef _OPENMP
  Eigen::setNbThreads(threads);
#endif
}

int apply_thread_limit_from_env() {
  const char* raw = std::getenv("OICA_THREADS");
  if (raw == nullptr || *raw == '\0') return -1;
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("OICA_THREADS is not an integer: ") + raw);
  }
  set_thread_limit(value);
  return value;
}

}  // namespace oica

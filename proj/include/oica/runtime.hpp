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

namespace oica {

/// Caps the threads used inside matrix products; 0 restores the default.
/// Has no effect in builds without OpenMP.
void set_thread_limit(int threads);

/// Reads OICA_THREADS from the environment and applies it. Returns the
/// value applied, or -1 if the variable is unset.
int apply_thread_limit_from_env();

}  // namespace oica

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

#include "oica/contrast.hpp"
#include "oica/error.hpp"
#include "oica/ica_fast.hpp"
#include "oica/ica_reference.hpp"
#include "oica/io.hpp"
#include "oica/matrix.hpp"
#include "oica/metrics.hpp"
#include "oica/rng.hpp"
#include "oica/runtime.hpp"
#include "oica/separation.hpp"
#include "oica/signal_model.hpp"
#include "oica/sourcegen.hpp"

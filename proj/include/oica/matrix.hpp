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

#include <Eigen/Dense>

namespace oica {

/// Dense row-major matrix of doubles. Rows are components or candidates,
/// columns are samples.
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

/// True when every entry is finite.
inline bool all_finite(const RealMatrix& m) { return m.allFinite(); }

/// Throws InvalidArgument unless m has at least one row and one column and
/// only finite entries.
void require_valid(const RealMatrix& m, const char* what);

}  // namespace oica

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
#include <vector>

#include "oica/matrix.hpp"
#include "oica/separation.hpp"

namespace oica {

/// Orthonormal basis (rows of g) of the orthogonal complement of the rows of
/// an (i-1) x N matrix W with orthonormal rows.
struct ComplementBasis {
  RealMatrix g;
  std::size_t reduced_dim = 0;
  /// Whether the pivoted row selection had to replace the leading rows of F.
  bool used_fallback = false;
};

/// R = S^{-1/2} for symmetric positive definite S via eigendecomposition.
/// Throws IllConditionedComplement if the smallest eigenvalue is below floor.
RealMatrix sym_inv_sqrt(const RealMatrix& s, double floor);

/// Builds G = (F~ F~^T)^{-1/2} F~ where F = I - W^T W and F~ holds its first
/// N - i + 1 rows. When F~ F~^T has an eigenvalue below floor the rows of F
/// are instead picked by greedy pivoting on residual norm, then
/// orthonormalized the same way. With allow_fallback = false that case
/// throws IllConditionedComplement.
ComplementBasis complement_basis(const RealMatrix& w, std::size_t n, double floor = 1e-10,
                                 bool allow_fallback = true);

/// One batched Newton update of every row of b against the reduced signal:
/// Z = B X~, B' = (Z.^3) X~^T / M - 3 B, then each row normalized. Throws
/// DegenerateRow if a row's norm before normalization is below 1e-12.
RealMatrix batch_newton_step(const RealMatrix& b, const RealMatrix& x_reduced);

struct ConvergencePartition {
  std::vector<std::size_t> still_active;
  std::vector<std::size_t> newly_converged;
};

/// Row l converges when min(|b_l - b_prev_l|, |b_l + b_prev_l|) <= eps.
ConvergencePartition partition_converged(const RealMatrix& b_new, const RealMatrix& b_prev,
                                         double eps);

/// Ordering ICA with all L candidates iterated as one matrix, converged
/// rows removed from the batch and the signal reduced to the complement of
/// the rows already extracted.
SeparationResult ordering_ica_fast(const RealMatrix& xw, const SeparationOptions& options);

}  // namespace oica

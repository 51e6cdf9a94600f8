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

#include "oica/ica_fast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "detail.hpp"
#include "oica/contrast.hpp"
#include "oica/error.hpp"
#include "oica/rng.hpp"

namespace oica {

RealMatrix sym_inv_sqrt(const RealMatrix& s, double floor) {
  if (s.rows() != s.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  if (s.rows() == 0) return RealMatrix(0, 0);
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  const RealVector& eig = solver.eigenvalues();
  if (!(eig[0] >= floor))
    throw Error(ErrorCode::IllConditionedComplement,
                "smallest eigenvalue " + std::to_string(eig[0]) + " below " +
                    std::to_string(floor));
  const Eigen::MatrixXd& v = solver.eigenvectors();
  RealMatrix r = v * eig.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  // Symmetrize away rounding.
  return (0.5 * (r + r.transpose())).eval();
}

namespace {

// Greedy pivoted selection of `count` rows of the projector f: repeatedly
// take the row with the largest residual norm and deflate the rest against
// it. This is pivoted Cholesky on f f^T = f. Returned indices are ascending.
std::vector<Eigen::Index> pivot_rows(const RealMatrix& f, std::size_t count) {
  RealMatrix residual = f;
  std::vector<Eigen::Index> picked;
  std::vector<bool> used(static_cast<std::size_t>(f.rows()), false);
  for (std::size_t s = 0; s < count; ++s) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index r = 0; r < f.rows(); ++r) {
      if (used[static_cast<std::size_t>(r)]) continue;
      const double norm = residual.row(r).squaredNorm();
      if (norm > best_norm) {
        best_norm = norm;
        best = r;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    picked.push_back(best);
    const RealVector q = residual.row(best).transpose() / std::sqrt(best_norm);
    residual -= (residual * q) * q.transpose();
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

ComplementBasis complement_basis(const RealMatrix& w, std::size_t n, double floor,
                                 bool allow_fallback) {
  const auto ni = static_cast<Eigen::Index>(n);
  if (w.cols() != ni)
    throw Error(ErrorCode::DimensionMismatch,
                "W has " + std::to_string(w.cols()) + " columns, expected " + std::to_string(n));
  if (w.rows() >= ni)
    throw Error(ErrorCode::InvalidArgument, "no complement left: W already has N rows");

  ComplementBasis out;
  out.reduced_dim = n - static_cast<std::size_t>(w.rows());
  if (w.rows() == 0) {
    out.g = RealMatrix::Identity(ni, ni);
    return out;
  }

  const auto d = static_cast<Eigen::Index>(out.reduced_dim);
  const RealMatrix f = RealMatrix::Identity(ni, ni) - w.transpose() * w;
  RealMatrix lead = f.topRows(d);
  RealMatrix gram = lead * lead.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> probe(gram, Eigen::EigenvaluesOnly);
  if (probe.eigenvalues()[0] < floor) {
    if (!allow_fallback)
      throw Error(ErrorCode::IllConditionedComplement,
                  "leading rows of I - W^T W do not span the complement");
    const std::vector<Eigen::Index> rows = pivot_rows(f, out.reduced_dim);
    for (Eigen::Index k = 0; k < d; ++k) lead.row(k) = f.row(rows[static_cast<std::size_t>(k)]);
    gram = lead * lead.transpose();
    out.used_fallback = true;
  }
  out.g = sym_inv_sqrt(gram, floor) * lead;
  return out;
}

namespace {

// Unnormalized Newton update for every row of b; writes the row norms.
RealMatrix newton_update(const RealMatrix& b, const RealMatrix& xr, RealMatrix& z,
                         RealVector& norms) {
  const double inv_m = 1.0 / static_cast<double>(xr.cols());
  z.noalias() = b * xr;
  z = z.array().cube();
  RealMatrix next(b.rows(), b.cols());
  next.noalias() = z * xr.transpose();
  next *= inv_m;
  next -= 3.0 * b;
  norms = next.rowwise().norm();
  return next;
}

}  // namespace

RealMatrix batch_newton_step(const RealMatrix& b, const RealMatrix& x_reduced) {
  if (b.cols() != x_reduced.rows())
    throw Error(ErrorCode::DimensionMismatch, "candidate width differs from reduced dimension");
  RealMatrix z;
  RealVector norms;
  RealMatrix next = newton_update(b, x_reduced, z, norms);
  for (Eigen::Index r = 0; r < next.rows(); ++r) {
    if (!(norms[r] >= detail::kDegenerateNorm))
      throw Error(ErrorCode::DegenerateRow, "row " + std::to_string(r) + " collapsed");
    next.row(r) /= norms[r];
  }
  return next;
}

ConvergencePartition partition_converged(const RealMatrix& b_new, const RealMatrix& b_prev,
                                         double eps) {
  if (b_new.rows() != b_prev.rows() || b_new.cols() != b_prev.cols())
    throw Error(ErrorCode::DimensionMismatch, "candidate batches differ in shape");
  ConvergencePartition out;
  for (Eigen::Index r = 0; r < b_new.rows(); ++r) {
    const bool done = detail::sign_invariant_step(b_new.row(r), b_prev.row(r)) <= eps;
    (done ? out.newly_converged : out.still_active).push_back(static_cast<std::size_t>(r));
  }
  return out;
}

namespace {

// Candidate rows that have left the active batch.
struct ConvergedStore {
  RealMatrix rows;
  std::vector<std::size_t> ids;
  std::vector<bool> converged;

  ConvergedStore(std::size_t capacity, Eigen::Index dim) : rows(capacity, dim) {}

  void add(const RealMatrix& src, Eigen::Index r, std::size_t id, bool ok) {
    rows.row(static_cast<Eigen::Index>(ids.size())) = src.row(r);
    ids.push_back(id);
    converged.push_back(ok);
  }
  Eigen::Index size() const { return static_cast<Eigen::Index>(ids.size()); }
};

RealMatrix take_rows(const RealMatrix& m, const std::vector<std::size_t>& rows) {
  RealMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    out.row(static_cast<Eigen::Index>(k)) = m.row(static_cast<Eigen::Index>(rows[k]));
  return out;
}

}  // namespace

SeparationResult ordering_ica_fast(const RealMatrix& xw, const SeparationOptions& options) {
  detail::check_separation_inputs(xw, options);
  detail::Stopwatch total;

  const std::size_t n = static_cast<std::size_t>(xw.rows());
  const std::size_t m = static_cast<std::size_t>(xw.cols());
  const std::size_t l_total = options.candidates;

  SeparationResult result;
  result.w.resize(0, xw.rows());
  result.stop_index = n + 1;
  result.stop_upsilon = std::numeric_limits<double>::quiet_NaN();

  RealMatrix reduced_storage;
  RealMatrix z;
  RealVector norms;
  for (std::size_t i = 0; i < n; ++i) {
    detail::Stopwatch clock;
    const auto d = static_cast<Eigen::Index>(n - i);

    RealMatrix g;
    const RealMatrix* xr = &xw;
    if (i > 0) {
      g = complement_basis(result.w, n, options.complement_floor).g;
      reduced_storage.noalias() = g * xw;
      xr = &reduced_storage;
    }

    ComponentDiagnostics diag;
    RealMatrix b(static_cast<Eigen::Index>(l_total), d);
    std::vector<std::size_t> active;
    active.reserve(l_total);
    for (std::size_t l = 0; l < l_total; ++l) {
      Rng rng = candidate_stream(options.seed, i, l);
      RealVector b0 = rng.normal_vector(d);
      const double norm = b0.norm();
      if (!(norm >= detail::kDegenerateNorm)) {
        ++diag.degenerate;
        continue;
      }
      b.row(static_cast<Eigen::Index>(active.size())) = b0.transpose() / norm;
      active.push_back(l);
    }
    b.conservativeResize(static_cast<Eigen::Index>(active.size()), Eigen::NoChange);

    ConvergedStore store(l_total, d);
    std::size_t t = 0;
    while (!active.empty() && t < options.max_iterations) {
      RealMatrix next = newton_update(b, *xr, z, norms);
      std::vector<std::size_t> keep;
      keep.reserve(active.size());
      std::vector<std::size_t> survivors;
      survivors.reserve(active.size());
      for (Eigen::Index r = 0; r < next.rows(); ++r) {
        if (!(norms[r] >= detail::kDegenerateNorm)) {
          ++diag.degenerate;
          continue;
        }
        next.row(r) /= norms[r];
        const std::size_t id = active[static_cast<std::size_t>(r)];
        if (detail::sign_invariant_step(next.row(r), b.row(r)) <= options.tolerance) {
          store.add(next, r, id, true);
        } else {
          keep.push_back(static_cast<std::size_t>(r));
          survivors.push_back(id);
        }
      }
      b = keep.size() == static_cast<std::size_t>(next.rows()) ? std::move(next)
                                                               : take_rows(next, keep);
      active = std::move(survivors);
      ++t;
    }
    diag.iterations = t;
    diag.converged = static_cast<std::size_t>(store.size());
    diag.unconverged = active.size();
    if (!options.strict_paper)
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        store.add(b, r, active[static_cast<std::size_t>(r)], false);

    if (store.size() == 0) {
      if (diag.degenerate == l_total)
        throw Error(ErrorCode::AllCandidatesDegenerate,
                    "every candidate degenerated at component " + std::to_string(i + 1));
      throw Error(ErrorCode::NoCandidates,
                  "no candidate converged at component " + std::to_string(i + 1) +
                      " and unconverged rows are dropped in strict mode");
    }

    const auto stored = store.rows.topRows(store.size());
    z.noalias() = stored * (*xr);
    const RealVector alpha = kurtosis_alpha_rows(z);

    // Ties go to the lowest candidate index, as in the sequential loop.
    Eigen::Index pick = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < store.size(); ++r) {
      const double score = upsilon(alpha[r]);
      const auto id = store.ids[static_cast<std::size_t>(r)];
      if (score > best || (score == best && id < store.ids[static_cast<std::size_t>(pick)])) {
        best = score;
        pick = r;
      }
    }
    diag.winner = store.ids[static_cast<std::size_t>(pick)];
    diag.winner_converged = store.converged[static_cast<std::size_t>(pick)];
    diag.upsilon = best;

    const bool gaussian =
        options.gaussianity_test && best < gaussianity_threshold(n, i + 1, m);
    if (!gaussian) {
      RealVector w_row = i > 0 ? RealVector(g.transpose() * stored.row(pick).transpose())
                               : RealVector(stored.row(pick).transpose());
      result.w.conservativeResize(result.w.rows() + 1, Eigen::NoChange);
      result.w.row(result.w.rows() - 1) = w_row.transpose();
      result.upsilon.push_back(best);
    }
    diag.seconds = clock.seconds();
    result.components.push_back(diag);
    if (gaussian) {
      result.stop_index = i + 1;
      result.stop_upsilon = best;
      break;
    }
  }

  result.total_seconds = total.seconds();
  return result;
}

}  // namespace oica

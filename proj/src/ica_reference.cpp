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

#include "oica/ica_reference.hpp"

#include <limits>
#include <string>

#include "detail.hpp"
#include "oica/contrast.hpp"
#include "oica/error.hpp"
#include "oica/ica_fast.hpp"
#include "oica/rng.hpp"

namespace oica {

namespace {

// w <- w - E w, then normalize. E may be empty (nothing extracted yet).
void project_and_normalize(RealVector& w, const RealMatrix& e) {
  if (e.size() != 0) w -= e * w;
  const double norm = w.norm();
  if (!(norm >= detail::kDegenerateNorm))
    throw Error(ErrorCode::DegenerateCandidate,
                "candidate collapsed after projection (norm " + std::to_string(norm) + ")");
  w /= norm;
}

}  // namespace

OneUnitResult fastica_one_unit(const RealVector& w0, const RealMatrix& xw, const RealMatrix& e,
                               std::size_t max_iterations, double eps) {
  const Eigen::Index n = xw.rows();
  if (w0.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "starting vector length differs from N");
  if (e.size() != 0 && (e.rows() != n || e.cols() != n))
    throw Error(ErrorCode::DimensionMismatch, "projector must be N x N");
  const double inv_m = 1.0 / static_cast<double>(xw.cols());

  OneUnitResult out;
  out.w = w0;
  project_and_normalize(out.w, e);

  RealVector prev(n);
  RealVector y(xw.cols());
  std::size_t t = 0;
  bool converged = false;
  do {
    prev = out.w;
    y.noalias() = xw.transpose() * out.w;
    out.w.noalias() = xw * y.array().cube().matrix();
    out.w *= inv_m;
    out.w -= 3.0 * prev;
    project_and_normalize(out.w, e);
    ++t;
    converged = detail::sign_invariant_step(out.w, prev) <= eps;
  } while (t < max_iterations && !converged);

  out.y.noalias() = xw.transpose() * out.w;
  out.iterations = t;
  out.converged = converged;
  return out;
}

SeparationResult ordering_ica_reference(const RealMatrix& xw, const SeparationOptions& options) {
  detail::check_separation_inputs(xw, options);
  detail::Stopwatch total;

  const std::size_t n = static_cast<std::size_t>(xw.rows());
  const std::size_t m = static_cast<std::size_t>(xw.cols());

  SeparationResult result;
  result.w.resize(0, xw.rows());
  result.stop_index = n + 1;
  result.stop_upsilon = std::numeric_limits<double>::quiet_NaN();

  RealMatrix e;  // empty until the first component is accepted
  for (std::size_t i = 0; i < n; ++i) {
    detail::Stopwatch clock;
    const std::size_t reduced = n - i;

    RealMatrix g;
    if (i > 0) {
      e = result.w.transpose() * result.w;
      if (options.reference_init == ReferenceInit::MatchedComplement)
        g = complement_basis(result.w, n, options.complement_floor).g;
    }

    ComponentDiagnostics diag;
    double best = -std::numeric_limits<double>::infinity();
    RealVector best_w;
    for (std::size_t l = 0; l < options.candidates; ++l) {
      Rng rng = candidate_stream(options.seed, i, l);
      RealVector w0;
      if (options.reference_init == ReferenceInit::FullSpace) {
        w0 = rng.normal_vector(xw.rows());
      } else {
        RealVector b0 = rng.normal_vector(static_cast<Eigen::Index>(reduced));
        w0 = i > 0 ? RealVector(g.transpose() * b0) : b0;
      }

      OneUnitResult run;
      try {
        run = fastica_one_unit(w0, xw, e, options.max_iterations, options.tolerance);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::DegenerateCandidate) throw;
        ++diag.degenerate;
        continue;
      }
      (run.converged ? diag.converged : diag.unconverged) += 1;

      const double score = upsilon(kurtosis_alpha({run.y.data(), m}).alpha);
      if (score > best) {
        best = score;
        best_w = std::move(run.w);
        diag.winner = l;
        diag.winner_converged = run.converged;
        diag.iterations = run.iterations;
      }
    }
    if (diag.degenerate == options.candidates)
      throw Error(ErrorCode::AllCandidatesDegenerate,
                  "every candidate degenerated at component " + std::to_string(i + 1));

    diag.upsilon = best;
    const bool gaussian =
        options.gaussianity_test && best < gaussianity_threshold(n, i + 1, m);
    if (!gaussian) {
      result.w.conservativeResize(result.w.rows() + 1, Eigen::NoChange);
      result.w.row(result.w.rows() - 1) = best_w.transpose();
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

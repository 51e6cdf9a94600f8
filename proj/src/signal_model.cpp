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

#include "oica/signal_model.hpp"

#include <cmath>
#include <string>

#include "oica/error.hpp"

namespace oica {

Centered center(const RealMatrix& x) {
  require_valid(x, "signal matrix");
  Centered out;
  out.mean = x.rowwise().mean();
  out.data = x.colwise() - out.mean;
  return out;
}

Whitened whiten(const RealMatrix& centered, double eig_floor) {
  require_valid(centered, "centered signal matrix");
  const Eigen::Index n = centered.rows();
  const Eigen::Index m = centered.cols();
  if (m <= n)
    throw Error(ErrorCode::InvalidArgument,
                "whitening needs more samples than channels (M=" + std::to_string(m) +
                    ", N=" + std::to_string(n) + ")");

  Eigen::MatrixXd cov = (centered * centered.transpose()) / static_cast<double>(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::RankDeficient, "covariance eigendecomposition failed");

  // Eigen sorts ascending; flip to descending.
  RealVector eig = solver.eigenvalues().reverse();
  Eigen::MatrixXd vecs = solver.eigenvectors().rowwise().reverse();

  const double largest = eig[0];
  if (!(largest > 0.0) || eig[n - 1] < eig_floor * largest)
    throw Error(ErrorCode::RankDeficient,
                "covariance eigenvalue " + std::to_string(eig[n - 1]) + " below floor " +
                    std::to_string(eig_floor) + " x " + std::to_string(largest));

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = 0;
    vecs.col(k).cwiseAbs().maxCoeff(&pivot);
    if (vecs(pivot, k) < 0.0) vecs.col(k) = -vecs.col(k);
  }

  Whitened out;
  out.model.mean = RealVector::Zero(n);
  out.model.eigenvalues = eig;
  out.model.whiten = eig.cwiseSqrt().cwiseInverse().asDiagonal() * vecs.transpose();
  out.model.dewhiten = vecs * eig.cwiseSqrt().asDiagonal();
  out.data = out.model.whiten * centered;
  return out;
}

Whitened center_and_whiten(const RealMatrix& x, double eig_floor) {
  Centered c = center(x);
  Whitened w = whiten(c.data, eig_floor);
  w.model.mean = std::move(c.mean);
  return w;
}

RealMatrix compose_unmixing(const RealMatrix& w_white, const WhiteningModel& model) {
  if (w_white.cols() != model.whiten.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "separating matrix has " + std::to_string(w_white.cols()) +
                    " columns, whitening is " + std::to_string(model.whiten.rows()) + "-dimensional");
  return w_white * model.whiten;
}

}  // namespace oica

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

#include "oica/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "oica/error.hpp"

namespace oica {

double ordering_error(const RealMatrix& w, const RealMatrix& a, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  const Eigen::Index n = a.rows();
  if (a.cols() != n || w.rows() > n || w.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "ordering error needs square A and W with at most N rows");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrices");

  // Rows the run never extracted stay zero, so each costs its diagonal entry.
  RealMatrix p = RealMatrix::Zero(n, n);
  p.topRows(w.rows()) = w * a;
  for (Eigen::Index r = 0; r < n; ++r) {
    Eigen::Index peak = 0;
    p.row(r).cwiseAbs().maxCoeff(&peak);
    if (p(r, peak) < 0.0) p.row(r) = -p.row(r);
  }
  const RealMatrix dev = (p - RealMatrix::Identity(n, n)).cwiseAbs();
  const auto wrong = (dev.array() > tau).count();
  return static_cast<double>(wrong) / static_cast<double>(n * n);
}

double cosine_divergence(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "vector lengths differ");
  const Eigen::Map<const RealVector> a(u.data(), static_cast<Eigen::Index>(u.size()));
  const Eigen::Map<const RealVector> b(v.data(), static_cast<Eigen::Index>(v.size()));
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
  const double cosine = std::min(1.0, std::abs(a.dot(b)) / (na * nb));
  return 1.0 - cosine;
}

FluctuationReport fluctuation(const std::vector<RealMatrix>& runs, std::size_t band_size) {
  if (runs.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "fluctuation needs at least two runs");
  if (band_size < 1) throw Error(ErrorCode::InvalidArgument, "band size must be >= 1");
  const Eigen::Index rows = runs.front().rows();
  const Eigen::Index cols = runs.front().cols();
  for (const RealMatrix& r : runs)
    if (r.rows() != rows || r.cols() != cols)
      throw Error(ErrorCode::DimensionMismatch, "runs differ in shape");

  FluctuationReport report;
  report.per_component.assign(static_cast<std::size_t>(rows), 0.0);
  const std::size_t t_count = runs.size();
  const double pairs = static_cast<double>(t_count * (t_count - 1));
  for (Eigen::Index i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      for (std::size_t u = 0; u < t_count; ++u) {
        if (t == u) continue;
        const RealVector a = runs[t].row(i).transpose();
        const RealVector b = runs[u].row(i).transpose();
        acc += cosine_divergence({a.data(), static_cast<std::size_t>(a.size())},
                                 {b.data(), static_cast<std::size_t>(b.size())});
      }
    }
    report.per_component[static_cast<std::size_t>(i)] = acc / pairs;
  }

  auto add_group = [&](const char* name, std::size_t first, std::size_t last) {
    last = std::min(last, report.per_component.size());
    if (first >= last) return;
    double sum = 0.0;
    for (std::size_t k = first; k < last; ++k) sum += report.per_component[k];
    report.groups.push_back({name, first, last, sum / static_cast<double>(last - first)});
  };
  const std::size_t total = report.per_component.size();
  add_group("all", 0, total);
  add_group("top", 0, band_size);
  add_group("mid", band_size, 2 * band_size);
  add_group("rest", 2 * band_size, total);
  return report;
}

}  // namespace oica

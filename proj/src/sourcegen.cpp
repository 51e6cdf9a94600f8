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

#include "oica/sourcegen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "oica/contrast.hpp"
#include "oica/error.hpp"

namespace oica {

namespace {

constexpr int kMaxMixingAttempts = 100;
constexpr double kMaxCondition = 1e6;

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw Error(ErrorCode::InvalidArgument, "shape parameter rho must be positive and finite");
}

// Gamma ratios overflow quickly for small rho (Gamma(5/0.35) ~ 1e10), so
// everything goes through log-gamma.
double lgam(double x) { return boost::math::lgamma(x); }

}  // namespace

double gg_beta(double rho) {
  check_rho(rho);
  return std::exp(0.5 * (lgam(1.0 / rho) - lgam(3.0 / rho)));
}

double gg_kurtosis(double rho) {
  check_rho(rho);
  return std::exp(lgam(5.0 / rho) + lgam(1.0 / rho) - 2.0 * lgam(3.0 / rho)) - 3.0;
}

RealVector gg_sample(double rho, std::size_t m, Rng& rng) {
  check_rho(rho);
  const double shape = 1.0 / rho;
  const double beta = gg_beta(rho);
  RealVector out(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const double u = rng.uniform();
    // Invert from whichever tail keeps the probability argument exact.
    const double g = u <= 0.5 ? boost::math::gamma_p_inv(shape, u)
                              : boost::math::gamma_q_inv(shape, 1.0 - u);
    out[static_cast<Eigen::Index>(k)] = rng.sign() * beta * std::pow(g, shape);
  }
  return out;
}

std::vector<double> paper_rho_grid() {
  std::vector<double> grid;
  for (int k = -10; k <= 10; ++k)
    if (k != 0) grid.push_back(2.0 * std::exp2(k / 4.0));
  return grid;
}

Dataset gen_dataset(const SourceSpec& spec) {
  if (spec.samples < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  for (double rho : spec.rhos) check_rho(rho);
  const std::size_t n = spec.rhos.size() + spec.gaussian_count;
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dataset needs at least one source");

  const auto ni = static_cast<Eigen::Index>(n);
  const auto mi = static_cast<Eigen::Index>(spec.samples);
  const Rng root(spec.seed);
  const Rng source_streams = root.child(0);

  Dataset ds;
  RealMatrix s(ni, mi);
  std::vector<double> kurt(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng = source_streams.child(r);
    const auto ri = static_cast<Eigen::Index>(r);
    if (r < spec.rhos.size()) {
      s.row(ri) = gg_sample(spec.rhos[r], spec.samples, rng).transpose();
      kurt[r] = gg_kurtosis(spec.rhos[r]);
    } else {
      s.row(ri) = rng.normal_vector(mi).transpose();
    }
  }

  RealMatrix a;
  if (spec.identity_mixing) {
    a = RealMatrix::Identity(ni, ni);
  } else {
    const Rng mixing_streams = root.child(1);
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxMixingAttempts && !accepted; ++attempt) {
      Rng rng = mixing_streams.child(static_cast<std::uint64_t>(attempt));
      a.resize(ni, ni);
      for (Eigen::Index r = 0; r < ni; ++r)
        for (Eigen::Index c = 0; c < ni; ++c) a(r, c) = rng.normal();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
      const RealVector& sv = svd.singularValues();
      const double smallest = sv[ni - 1];
      accepted = smallest > 0.0 && sv[0] / smallest < kMaxCondition;
    }
    if (!accepted)
      throw Error(ErrorCode::MixingGenerationFailed,
                  "no well-conditioned mixing matrix after " +
                      std::to_string(kMaxMixingAttempts) + " attempts");
  }

  ds.observed = a * s;
  ds.mixing = std::move(a);
  ds.sources = std::move(s);
  ds.true_kurtoses = std::move(kurt);
  return ds;
}

std::vector<std::size_t> ground_truth_order(const std::vector<double>& kurtoses) {
  std::vector<double> score(kurtoses.size());
  std::transform(kurtoses.begin(), kurtoses.end(), score.begin(),
                 [](double k) { return upsilon(k); });
  std::vector<std::size_t> order(kurtoses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return score[x] > score[y]; });
  return order;
}

RealMatrix sorted_mixing(const RealMatrix& mixing, const std::vector<double>& kurtoses) {
  if (static_cast<std::size_t>(mixing.cols()) != kurtoses.size())
    throw Error(ErrorCode::DimensionMismatch, "one kurtosis per mixing column expected");
  const std::vector<std::size_t> order = ground_truth_order(kurtoses);
  RealMatrix out(mixing.rows(), mixing.cols());
  for (std::size_t k = 0; k < order.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = mixing.col(static_cast<Eigen::Index>(order[k]));
  return out;
}

}  // namespace oica

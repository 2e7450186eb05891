/*
 * Copyright 2026 The icakit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ica/whitening.hpp"

#include <cmath>
#include <string>

namespace ica {

CenteredData center(const DataMatrix& data) {
  if (data.rows() < 1 || data.cols() < 1) throw DimensionError("center: empty data");
  require_finite(data, "center");
  Eigen::VectorXd mean = data.colwise().mean().transpose();
  DataMatrix out = data.rowwise() - mean.transpose();
  return {std::move(out), std::move(mean)};
}

Eigen::MatrixXd covariance(const DataMatrix& centered) {
  const Eigen::Index n = centered.rows();
  if (n < 2) throw DataError("covariance: need at least 2 samples");
  require_finite(centered, "covariance");

  const double dn = static_cast<double>(n);
  for (Eigen::Index j = 0; j < centered.cols(); ++j) {
    const double mean = centered.col(j).mean();
    const double stdev = std::sqrt((centered.col(j).array() - mean).square().sum() / dn);
    if (std::abs(mean) > 1e-8 * stdev) {
      throw DataError("covariance: column " + std::to_string(j) +
                      " is not centered (mean " + std::to_string(mean) + ")");
    }
  }

  Eigen::MatrixXd cov = (centered.transpose() * centered) / dn;
  return (cov + cov.transpose()) / 2.0;
}

WhiteningTransform::WhiteningTransform(Eigen::VectorXd mean, EigenDecomposition<double> eigen)
    : mean_(std::move(mean)), eigen_(std::move(eigen)) {
  const Eigen::Index d = eigen_.dim();
  if (mean_.size() != d) throw DimensionError("WhiteningTransform: mean/eigen size mismatch");
  matrix_ = eigen_.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
            eigen_.eigenvectors.transpose();
}

Eigen::MatrixXd WhiteningTransform::symmetric_matrix() const {
  return eigen_.eigenvectors * matrix_;
}

WhiteningTransform whitening_transform(const Eigen::MatrixXd& cov) {
  return whitening_transform(cov, Eigen::VectorXd::Zero(cov.rows()));
}

WhiteningTransform whitening_transform(const Eigen::MatrixXd& cov, Eigen::VectorXd mean) {
  auto eig = covariance_eig(cov);
  const double largest = eig.eigenvalues(0);
  const double floor = 1e-10 * largest;
  for (Eigen::Index i = 0; i < eig.dim(); ++i) {
    if (!(eig.eigenvalues(i) > floor)) {
      throw RankDeficientError("whitening_transform: covariance is rank deficient, eigenvalue " +
                                   std::to_string(i) + " is " +
                                   std::to_string(eig.eigenvalues(i)),
                               static_cast<std::size_t>(i), eig.eigenvalues(i));
    }
  }
  return WhiteningTransform(std::move(mean), std::move(eig));
}

DataMatrix apply_whitening(const WhiteningTransform& t, const DataMatrix& data) {
  if (data.cols() != t.dim()) {
    throw DimensionError("apply_whitening: data has " + std::to_string(data.cols()) +
                         " columns, transform expects " + std::to_string(t.dim()));
  }
  require_finite(data, "apply_whitening");
  return (data.rowwise() - t.mean().transpose()) * t.matrix().transpose();
}

WhiteningTransform fit_whitening(const DataMatrix& data) {
  auto centered = center(data);
  return whitening_transform(covariance(centered.data), std::move(centered.mean));
}

}  // namespace ica

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

#pragma once

#include <Eigen/Core>

#include "ica/linalg.hpp"

namespace ica {

struct CenteredData {
  DataMatrix data;
  Eigen::VectorXd mean;
};

/// Subtracts the per-dimension sample mean.
CenteredData center(const DataMatrix& data);

/// Sample covariance (1/n) X^T X of centered data.
///
/// The divisor is n, not n - 1: this is the expectation <x x^T> over the
/// empirical distribution, so a whitened sample has covariance exactly I.
/// Throws DataError if a column mean exceeds 1e-8 of that column's standard
/// deviation, or if n < 2.
Eigen::MatrixXd covariance(const DataMatrix& centered);

/// The whitening map x -> D^(-1/2) E^T (x - mean).
///
/// Rows of matrix() are the covariance eigenvectors scaled by
/// lambda_i^(-1/2), in descending eigenvalue order. All d directions are
/// kept.
class WhiteningTransform {
 public:
  WhiteningTransform(Eigen::VectorXd mean, EigenDecomposition<double> eigen);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const EigenDecomposition<double>& eigen() const { return eigen_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  /// E D^(-1/2) E^T, the symmetric whitening filter. It differs from
  /// matrix() by the orthogonal factor E, so it whitens equally well, but it
  /// leaves the data in the measurement axes rather than the principal axes.
  Eigen::MatrixXd symmetric_matrix() const;

 private:
  Eigen::VectorXd mean_;
  EigenDecomposition<double> eigen_;
  Eigen::MatrixXd matrix_;
};

/// Builds the transform from a covariance matrix. Fails with
/// RankDeficientError when the smallest eigenvalue is not above
/// 1e-10 times the largest.
WhiteningTransform whitening_transform(const Eigen::MatrixXd& cov);
WhiteningTransform whitening_transform(const Eigen::MatrixXd& cov, Eigen::VectorXd mean);

/// (data - mean) * matrix^T
DataMatrix apply_whitening(const WhiteningTransform& t, const DataMatrix& data);

/// center -> covariance -> whitening_transform
WhiteningTransform fit_whitening(const DataMatrix& data);

}  // namespace ica

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

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

// Test-side generators. They use the standard library directly so the
// library's own sampler is never its own oracle.
namespace testing {

inline Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(gen);
  return m;
}

inline Eigen::MatrixXd uniform_matrix(Eigen::Index rows, Eigen::Index cols, double lo, double hi,
                                      std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(gen);
  return m;
}

inline Eigen::MatrixXd random_symmetric(Eigen::Index d, std::uint64_t seed) {
  const Eigen::MatrixXd b = normal_matrix(d, d, seed);
  return (b + b.transpose()) / 2.0;
}

inline Eigen::MatrixXd random_spd(Eigen::Index d, std::uint64_t seed) {
  const Eigen::MatrixXd b = normal_matrix(d, d, seed);
  return b * b.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
}

/// Orthogonal Q from the QR of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(Eigen::Index d, std::uint64_t seed) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(normal_matrix(d, d, seed));
  return qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
}

inline Eigen::MatrixXd permutation(const std::vector<int>& p) {
  const auto d = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, p[static_cast<std::size_t>(i)]) = 1.0;
  return m;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

inline Eigen::MatrixXd sample_cov(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  return c.transpose() * c / static_cast<double>(x.rows());
}

}  // namespace testing

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

#include <cmath>

#include "ica/optimize.hpp"

namespace ica {

namespace {

// An eigenvalue gap must exceed this many standard errors of its own
// sampling distribution to count as separated.
constexpr double kGapStandardErrors = 4.0;
constexpr double kGapRelativeFloor = 1e-6;

}  // namespace

RotationMatrix fobi(const DataMatrix& data_w) {
  require_whitened(data_w);
  const Eigen::Index n = data_w.rows();
  const double dn = static_cast<double>(n);

  const Eigen::VectorXd weight = data_w.rowwise().squaredNorm();
  Eigen::MatrixXd c = data_w.transpose() * weight.asDiagonal() * data_w / dn;
  c = (c + c.transpose()) / 2.0;
  const auto eig = sym_eig(c);

  // Under the null of a tie, (e_a^T x)^2 - (e_b^T x)^2 weighted by |x|^2 has
  // mean zero; its standard error sets the noise level of the gap.
  const DataMatrix proj = data_w * eig.eigenvectors;
  for (Eigen::Index a = 0; a + 1 < eig.dim(); ++a) {
    const double gap = eig.eigenvalues(a) - eig.eigenvalues(a + 1);
    const Eigen::ArrayXd z =
        weight.array() * (proj.col(a).array().square() - proj.col(a + 1).array().square());
    const double se = std::sqrt((z - z.mean()).square().sum() / (dn - 1.0) / dn);
    const double needed =
        std::max(kGapRelativeFloor * std::abs(eig.eigenvalues(0)), kGapStandardErrors * se);
    if (gap < needed) {
      throw DegeneracyError("fobi: fourth-order eigenvalues " + std::to_string(a) + " and " +
                                std::to_string(a + 1) + " are tied (gap " +
                                std::to_string(gap) + ", noise floor " +
                                std::to_string(needed) +
                                "); sources with equal kurtosis cannot be separated",
                            static_cast<std::size_t>(a), static_cast<std::size_t>(a + 1));
    }
  }
  return canonicalize(eig.eigenvectors.transpose(), data_w);
}

}  // namespace ica

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

#include <optional>
#include <vector>

#include "ica/linalg.hpp"

namespace ica {

/// G = W A, computed entry by entry in a fixed summation order so that row
/// permutations and sign flips of W carry over to G bit-for-bit.
Eigen::MatrixXd gain_matrix(const Eigen::MatrixXd& w_est, const Eigen::MatrixXd& a_true);

/// Amari index of G = W A, normalized to [0, 1].
///
///   1/(2d(d-1)) * [ sum_i (sum_j |g_ij| / max_j |g_ij| - 1)
///                 + sum_j (sum_i |g_ij| / max_i |g_ij| - 1) ]
///
/// evaluated on G with each row divided by its largest magnitude, so the
/// value depends on W only up to the order, sign and scale of its rows.
/// Zero exactly when G is a scaled permutation.
double amari_index(const Eigen::MatrixXd& a_true, const Eigen::MatrixXd& w_est);

struct ComponentMatch {
  /// permutation[i] = index of the true source matched to recovered row i
  std::vector<int> permutation;
  /// sign of the matched gain g(i, permutation[i])
  std::vector<int> signs;
};

/// Assigns every recovered component to a distinct true source, maximizing
/// the row-normalized gains |g_ij| / max_j |g_ij|. Exhaustive for d <= 6,
/// greedy above.
ComponentMatch match_components(const Eigen::MatrixXd& w_est, const Eigen::MatrixXd& a_true);

/// Multi-information (bits) of recovered sources.
double independence_report(const DataMatrix& shat, int k = 3);

struct RecoveryReport {
  double amari_index = 0.0;
  Eigen::MatrixXd gain_matrix;
  std::vector<int> matched_permutation;
  std::vector<int> matched_signs;
  std::optional<double> multi_info_bits;
};

/// Scores w_est against the true mixing. multi_info_bits is filled when
/// recovered sources are supplied.
RecoveryReport evaluate(const Eigen::MatrixXd& a_true, const Eigen::MatrixXd& w_est,
                        const DataMatrix* shat = nullptr, int k = 3);

}  // namespace ica

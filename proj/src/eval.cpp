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

#include "ica/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ica/entropy.hpp"

namespace ica {

namespace {

void check_pair(const Eigen::MatrixXd& w_est, const Eigen::MatrixXd& a_true, const char* what) {
  require_square(a_true, what);
  require_square(w_est, what);
  if (w_est.rows() != a_true.rows()) {
    throw DimensionError(std::string(what) + ": W is " + std::to_string(w_est.rows()) +
                         "x" + std::to_string(w_est.cols()) + " but A is " +
                         std::to_string(a_true.rows()) + "x" + std::to_string(a_true.cols()));
  }
  invert(a_true);  // throws SingularMatrixError
}

double sorted_sum(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

Eigen::MatrixXd gain_matrix(const Eigen::MatrixXd& w_est, const Eigen::MatrixXd& a_true) {
  if (w_est.cols() != a_true.rows()) throw DimensionError("gain_matrix: dimension mismatch");
  Eigen::MatrixXd g(w_est.rows(), a_true.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < w_est.cols(); ++k) acc += w_est(i, k) * a_true(k, j);
      g(i, j) = acc;
    }
  }
  return g;
}

double amari_index(const Eigen::MatrixXd& a_true, const Eigen::MatrixXd& w_est) {
  check_pair(w_est, a_true, "amari_index");
  require_finite(w_est, "amari_index");
  const Eigen::Index d = a_true.rows();
  if (d == 1) return 0.0;

  // Rows of |G| are scaled to peak 1 first; the column terms would
  // otherwise change when a row of W is rescaled.
  Eigen::MatrixXd g = gain_matrix(w_est, a_true).cwiseAbs();
  for (Eigen::Index i = 0; i < d; ++i) {
    const double peak = g.row(i).maxCoeff();
    if (!(peak > 0.0)) throw DataError("amari_index: W A has an all-zero row");
    g.row(i) /= peak;
  }
  std::vector<double> terms;
  std::vector<double> buf;
  for (Eigen::Index i = 0; i < d; ++i) {
    buf.assign(g.row(i).begin(), g.row(i).end());
    terms.push_back(sorted_sum(buf) - 1.0);
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    const double peak = g.col(j).maxCoeff();
    if (!(peak > 0.0)) throw DataError("amari_index: W A has an all-zero column");
    buf.assign(g.col(j).begin(), g.col(j).end());
    terms.push_back(sorted_sum(buf) / peak - 1.0);
  }
  const double dd = static_cast<double>(d);
  return sorted_sum(terms) / (2.0 * dd * (dd - 1.0));
}

ComponentMatch match_components(const Eigen::MatrixXd& w_est, const Eigen::MatrixXd& a_true) {
  check_pair(w_est, a_true, "match_components");
  const Eigen::MatrixXd g = gain_matrix(w_est, a_true);
  const auto d = static_cast<int>(g.rows());

  Eigen::MatrixXd score = g.cwiseAbs();
  for (int i = 0; i < d; ++i) {
    const double peak = score.row(i).maxCoeff();
    if (peak > 0.0) score.row(i) /= peak;
  }

  std::vector<int> best(static_cast<std::size_t>(d));
  std::iota(best.begin(), best.end(), 0);
  if (d <= 6) {
    std::vector<int> perm = best;
    double best_score = -1.0;
    do {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += score(i, perm[static_cast<std::size_t>(i)]);
      if (s > best_score) {
        best_score = s;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<bool> row_used(static_cast<std::size_t>(d), false);
    std::vector<bool> col_used(static_cast<std::size_t>(d), false);
    for (int step = 0; step < d; ++step) {
      int bi = -1;
      int bj = -1;
      for (int i = 0; i < d; ++i) {
        if (row_used[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < d; ++j) {
          if (col_used[static_cast<std::size_t>(j)]) continue;
          if (bi < 0 || score(i, j) > score(bi, bj)) {
            bi = i;
            bj = j;
          }
        }
      }
      row_used[static_cast<std::size_t>(bi)] = true;
      col_used[static_cast<std::size_t>(bj)] = true;
      best[static_cast<std::size_t>(bi)] = bj;
    }
  }

  ComponentMatch out{best, {}};
  for (int i = 0; i < d; ++i) {
    out.signs.push_back(g(i, best[static_cast<std::size_t>(i)]) < 0.0 ? -1 : 1);
  }
  return out;
}

double independence_report(const DataMatrix& shat, int k) {
  return multi_information(shat, k).bits;
}

RecoveryReport evaluate(const Eigen::MatrixXd& a_true, const Eigen::MatrixXd& w_est,
                        const DataMatrix* shat, int k) {
  RecoveryReport out;
  out.amari_index = amari_index(a_true, w_est);
  out.gain_matrix = gain_matrix(w_est, a_true);
  const ComponentMatch match = match_components(w_est, a_true);
  out.matched_permutation = match.permutation;
  out.matched_signs = match.signs;
  if (shat != nullptr) out.multi_info_bits = independence_report(*shat, k);
  return out;
}

}  // namespace ica

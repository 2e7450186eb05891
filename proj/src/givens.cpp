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

#include <algorithm>
#include <numeric>

#include "ica/optimize.hpp"

namespace ica {

namespace {

std::span<const double> column(const DataMatrix& m, Eigen::Index j) {
  return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

double total(std::vector<double> parts) {
  std::sort(parts.begin(), parts.end());
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

}  // namespace

GivensResult givens_descent(const DataMatrix& data_w, const GivensOptions& opts,
                            const std::optional<RotationMatrix>& start) {
  const Eigen::Index d = data_w.cols();
  if (d < 2) throw DimensionError("givens_descent: need at least 2 dimensions");
  if (opts.grid_steps < 4) throw DataError("givens_descent: grid_steps must be at least 4");
  if (opts.sweeps_max < 1) throw DataError("givens_descent: sweeps_max must be positive");
  if (!(opts.angle_tolerance_deg > 0.0)) {
    throw DataError("givens_descent: angle tolerance must be positive");
  }
  require_whitened(data_w);

  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(d, d);
  if (start) {
    if (start->dim() != d) throw DimensionError("givens_descent: start rotation has wrong size");
    v = start->matrix();
  }
  DataMatrix y = rotate(v, data_w);

  std::vector<double> h(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    h[static_cast<std::size_t>(j)] = marginal_entropy(column(y, j), kObjectiveMarginalK).bits;
  }

  GivensResult out{RotationMatrix::identity(d), false, 0, {}, 0.0, 0.0};
  double current = total(h);
  out.objective_trace.push_back(current);

  for (int sweep = 1; sweep <= opts.sweeps_max; ++sweep) {
    const double before = current;
    for (Eigen::Index p = 0; p + 1 < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const auto search = detail::search_pair(column(y, p), column(y, q), opts.grid_steps,
                                                90.0, opts.angle_tolerance_deg);
        if (sweep == 1) {
          const auto [lo, hi] =
              std::minmax_element(search.grid_values.begin(), search.grid_values.end());
          out.first_sweep_range_bits = std::max(out.first_sweep_range_bits, *hi - *lo);
        }
        const auto hp = static_cast<std::size_t>(p);
        const auto hq = static_cast<std::size_t>(q);
        if (!(search.value < h[hp] + h[hq])) continue;

        const Eigen::MatrixXd g = rotation_2d(search.angle_deg).matrix();
        const double c = g(0, 0);
        const double s = g(1, 0);
        const Eigen::VectorXd yp = y.col(p);
        const Eigen::VectorXd yq = y.col(q);
        y.col(p) = c * yp - s * yq;
        y.col(q) = s * yp + c * yq;
        const Eigen::RowVectorXd vp = v.row(p);
        const Eigen::RowVectorXd vq = v.row(q);
        v.row(p) = c * vp - s * vq;
        v.row(q) = s * vp + c * vq;
        h[hp] = marginal_entropy(column(y, p), kObjectiveMarginalK).bits;
        h[hq] = marginal_entropy(column(y, q), kObjectiveMarginalK).bits;
      }
    }
    current = total(h);
    out.objective_trace.push_back(current);
    out.sweeps = sweep;
    if (sweep == 1) out.first_sweep_improvement_bits = before - current;
    if (before - current < opts.min_improvement_bits) {
      out.converged = true;
      break;
    }
  }

  out.rotation = canonicalize(v, data_w);
  return out;
}

}  // namespace ica

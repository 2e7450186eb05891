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
#include <cmath>

#include "ica/optimize.hpp"

namespace ica {

namespace detail {

double pair_objective(std::span<const double> x, std::span<const double> y, double theta_deg,
                      std::vector<double>& scratch_u, std::vector<double>& scratch_v) {
  const Eigen::MatrixXd r = rotation_2d(theta_deg).matrix();
  const double c = r(0, 0);
  const double s = r(1, 0);
  const std::size_t n = x.size();
  scratch_u.resize(n);
  scratch_v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    scratch_u[i] = (0.0 + c * x[i]) + (-s) * y[i];
    scratch_v[i] = (0.0 + s * x[i]) + c * y[i];
  }
  return marginal_entropy(scratch_u, kObjectiveMarginalK).bits +
         marginal_entropy(scratch_v, kObjectiveMarginalK).bits;
}

PairSearch search_pair(std::span<const double> x, std::span<const double> y, int steps,
                       double span_deg, double tol_deg) {
  std::vector<double> u;
  std::vector<double> v;
  const double step = span_deg / steps;

  PairSearch out{0.0, 0.0, 0, {}};
  out.grid_values.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out.grid_values.push_back(pair_objective(x, y, i * step, u, v));
  }
  const auto best = std::min_element(out.grid_values.begin(), out.grid_values.end());
  out.grid_index = static_cast<std::size_t>(best - out.grid_values.begin());
  out.angle_deg = static_cast<double>(out.grid_index) * step;
  out.value = *best;

  const double centre = out.angle_deg;
  auto f = [&](double t) { return pair_objective(x, y, t, u, v); };
  const double refined = golden_section(f, centre - step, centre + step, tol_deg);
  const double refined_value = f(refined);
  if (refined_value < out.value) {
    out.angle_deg = refined;  // may fall just outside [0, span_deg)
    out.value = refined_value;
  }
  return out;
}

}  // namespace detail

double SweepResult::range_bits() const {
  const auto [lo, hi] = std::minmax_element(objective_bits.begin(), objective_bits.end());
  return *hi - *lo;
}

SweepResult sweep_2d(const DataMatrix& data_w, int steps, bool with_multi_info, int k) {
  if (data_w.cols() != 2) {
    throw DimensionError("sweep_2d: needs 2-D data, got " + std::to_string(data_w.cols()));
  }
  if (steps < 18) throw DataError("sweep_2d: need at least 18 steps");
  require_whitened(data_w);

  const auto x = data_w.col(0);
  const auto y = data_w.col(1);
  const auto search = detail::search_pair(std::span<const double>(x.data(), x.size()),
                                          std::span<const double>(y.data(), y.size()), steps,
                                          180.0, 1e-2);

  SweepResult out;
  out.objective_bits = search.grid_values;
  out.angles_deg.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out.angles_deg.push_back(i * (180.0 / steps));
  out.argmin_deg = search.angle_deg;
  if (out.argmin_deg < 0.0) out.argmin_deg += 180.0;
  if (out.argmin_deg >= 180.0) out.argmin_deg -= 180.0;
  out.argmin_objective_bits = search.value;
  out.argmin_index = search.grid_index;

  if (with_multi_info) {
    // Euclidean distances, and so the joint estimate, do not change under
    // rotation; only the marginal part varies with the angle.
    const double joint = joint_entropy(data_w, k).bits;
    std::vector<double> mi;
    mi.reserve(out.objective_bits.size());
    for (double h : out.objective_bits) mi.push_back(h - joint);
    out.multi_info_bits = std::move(mi);
  }
  return out;
}

}  // namespace ica

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
#include <numbers>
#include <numeric>

#include "ica/optimize.hpp"

namespace ica {

RotationMatrix::RotationMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  require_square(m_, "RotationMatrix");
  require_finite(m_, "RotationMatrix");
  if (!is_orthogonal(m_, 1e-10)) throw DataError("RotationMatrix: matrix is not orthogonal");
}

RotationMatrix RotationMatrix::identity(Eigen::Index d) {
  return RotationMatrix(Eigen::MatrixXd::Identity(d, d));
}

RotationMatrix rotation_2d(double theta_deg) {
  if (!std::isfinite(theta_deg)) throw DataError("rotation_2d: angle must be finite");
  double c = 0.0;
  double s = 0.0;
  // quarter turns are produced exactly
  const double quarters = theta_deg / 90.0;
  if (quarters == std::floor(quarters)) {
    switch (static_cast<long long>(std::fmod(std::fmod(quarters, 4.0) + 4.0, 4.0))) {
      case 0: c = 1.0; break;
      case 1: s = 1.0; break;
      case 2: c = -1.0; break;
      default: s = -1.0; break;
    }
  } else {
    const double rad = theta_deg * std::numbers::pi / 180.0;
    c = std::cos(rad);
    s = std::sin(rad);
  }
  Eigen::MatrixXd m(2, 2);
  m << c, -s, s, c;
  return RotationMatrix(std::move(m));
}

DataMatrix rotate(const Eigen::MatrixXd& v, const DataMatrix& data) {
  if (v.cols() != data.cols()) {
    throw DimensionError("rotate: rotation is " + std::to_string(v.rows()) + "x" +
                         std::to_string(v.cols()) + ", data has " +
                         std::to_string(data.cols()) + " columns");
  }
  DataMatrix out = DataMatrix::Zero(data.rows(), v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      out.col(i) += v(i, j) * data.col(j);
    }
  }
  return out;
}

void require_whitened(const DataMatrix& data, double tol) {
  if (data.rows() < 2) throw DataError("require_whitened: need at least 2 samples");
  const DataMatrix centered = data.rowwise() - data.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(data.rows());
  const double dev =
      (cov - Eigen::MatrixXd::Identity(cov.rows(), cov.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= tol)) {
    throw NotWhitenedError("data is not whitened: covariance differs from identity by " +
                           std::to_string(dev));
  }
}

double objective(const RotationMatrix& v, const DataMatrix& data_w) {
  if (v.dim() != data_w.cols()) throw DimensionError("objective: dimension mismatch");
  require_whitened(data_w);
  const DataMatrix y = rotate(v.matrix(), data_w);
  std::vector<double> parts;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const auto col = y.col(j);
    const std::span<const double> samples(col.data(), static_cast<std::size_t>(col.size()));
    parts.push_back(marginal_entropy(samples, kObjectiveMarginalK).bits);
  }
  std::sort(parts.begin(), parts.end());
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

Eigen::VectorXd excess_kurtosis(const DataMatrix& data) {
  Eigen::VectorXd out(data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const Eigen::ArrayXd c = data.col(j).array() - data.col(j).mean();
    const double m2 = c.square().mean();
    const double m4 = c.square().square().mean();
    out(j) = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
  }
  return out;
}

RotationMatrix canonicalize(const Eigen::MatrixXd& v, const DataMatrix& data_w) {
  const Eigen::Index d = v.rows();
  const Eigen::VectorXd kurt = excess_kurtosis(rotate(v, data_w));

  std::vector<Eigen::Index> peak(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) v.row(i).cwiseAbs().maxCoeff(&peak[static_cast<std::size_t>(i)]);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (kurt(a) != kurt(b)) return kurt(a) > kurt(b);
    return peak[static_cast<std::size_t>(a)] < peak[static_cast<std::size_t>(b)];
  });

  Eigen::MatrixXd out(d, v.cols());
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.row(i) = v.row(src);
    if (out(i, peak[static_cast<std::size_t>(src)]) < 0.0) out.row(i) *= -1.0;
  }
  return RotationMatrix(std::move(out));
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Sweep2d:
      return "sweep2d";
    case Method::Givens:
      return "givens";
    case Method::Fobi:
      return "fobi";
    case Method::FobiGivens:
      return "fobi+givens";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::Sweep2d, Method::Givens, Method::Fobi, Method::FobiGivens}) {
    if (to_string(m) == name) return m;
  }
  throw DataError("unknown method '" + std::string(name) + "'");
}

bool UnmixingModel::has_warning(std::string_view code) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [&](const Warning& w) { return w.code == code; });
}

}  // namespace ica

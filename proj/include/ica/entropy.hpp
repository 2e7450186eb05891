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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ica/linalg.hpp"

namespace ica {

// Binless (nearest-neighbour) differential entropy estimators, in bits.
//
// Both are Kozachenko-Leonenko estimators. The 1-D marginal uses the
// distance to the nearest *distinct* neighbour; the d-dimensional joint
// estimator uses the Euclidean distance to the k-th neighbour. Distances
// below 1e-12 of the sample spread are clamped to that floor and counted as
// degenerate; more than 1% degenerate points is an error.

enum class Estimator { Marginal1nn, JointKnn };

std::string_view to_string(Estimator e);

struct EntropyEstimate {
  double bits = 0.0;
  std::size_t n = 0;
  Estimator estimator = Estimator::Marginal1nn;
  int k = 1;
  std::size_t degenerate = 0;  ///< points whose distance hit the floor
};

struct MultiInformationEstimate {
  /// sum(marginal_bits) - joint_bits. May be slightly negative from
  /// estimator bias.
  double bits = 0.0;
  std::vector<double> marginal_bits;
  double joint_bits = 0.0;
  std::vector<std::string> warnings;
};

/// Needs n >= 10 and a nonzero spread. k = 1 uses the nearest distinct
/// neighbour; k > 1 the k-th nearest sample.
EntropyEstimate marginal_entropy(std::span<const double> samples, int k = 1);

/// Needs n >= 10 d and 1 <= k <= 20.
EntropyEstimate joint_entropy(const DataMatrix& data, int k = 3);

/// Marginals use the 1-NN estimator, the joint uses k neighbours.
MultiInformationEstimate multi_information(const DataMatrix& data, int k = 3);

/// Same as multi_information but with the joint term supplied by the caller,
/// for sweeps where the joint entropy is rotation invariant.
MultiInformationEstimate multi_information(const DataMatrix& data, const EntropyEstimate& joint);

namespace detail {

/// psi(n) for positive integer n.
double digamma(std::size_t n);

/// Volume of the unit ball in d dimensions.
double unit_ball_volume(int d);

}  // namespace detail

}  // namespace ica

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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ica/linalg.hpp"

namespace ica {

// Zero-mean source distributions.
struct Gaussian {
  double sigma = 1.0;
};
struct Laplacian {
  double scale = 1.0;
};
/// Equal-weight mixture of N(+mu, sigma^2) and N(-mu, sigma^2).
struct GaussianMixture {
  double mu = 2.0;
  double sigma = 0.5;
};
/// Uniform on [-half_width, half_width].
struct Uniform {
  double half_width = 1.0;
};

using Distribution = std::variant<Gaussian, Laplacian, GaussianMixture, Uniform>;

/// One distribution per source dimension; dimensions are sampled independently.
using SourceSpec = std::vector<Distribution>;

double variance(const Distribution& dist);

/// "laplacian:1", "gaussian:1", "gaussian_mixture:2:0.5", "uniform:1"
std::string to_string(const Distribution& dist);
Distribution parse_distribution(std::string_view text);
/// Comma separated list of distributions.
SourceSpec parse_source_spec(std::string_view text);

/// n i.i.d. rows. Dimension j draws from its own generator seeded from
/// (seed, j), so output is bit-identical for a fixed (spec, n, seed) and
/// adding a dimension never changes the others.
DataMatrix sample_sources(const SourceSpec& spec, std::size_t n, std::uint64_t seed);

/// x = A s for every row: returns sources * a^T. No noise.
DataMatrix mix(const DataMatrix& sources, const Eigen::MatrixXd& a);

struct Preset {
  std::string name;
  SourceSpec spec;
  Eigen::MatrixXd mixing;
};

/// x_formation, bimodal_unimodal or gaussian_isotropic.
Preset preset(std::string_view name);
std::vector<std::string> preset_names();

struct MixtureDataset {
  DataMatrix sources;
  Eigen::MatrixXd mixing;
  DataMatrix observed;
  std::uint64_t seed = 0;
  SourceSpec spec;
};

MixtureDataset make_dataset(const SourceSpec& spec, const Eigen::MatrixXd& mixing, std::size_t n,
                            std::uint64_t seed);

/// Haar-distributed d x d orthogonal matrix.
Eigen::MatrixXd random_orthogonal(Eigen::Index d, std::uint64_t seed);

}  // namespace ica

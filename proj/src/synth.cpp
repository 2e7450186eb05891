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

#include "ica/synth.hpp"

#include <Eigen/QR>

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "ica/optimize.hpp"

namespace ica {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// mt19937_64 and seed_seq are fully specified by the standard; the
// distributions below are written out so the bit stream does not depend on
// the standard library's distribution implementations.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t substream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(substream),
                      static_cast<std::uint32_t>(substream >> 32)};
    engine_.seed(seq);
  }

  /// uniform on (0, 1)
  double uniform() {
    double u = 0.0;
    while (u == 0.0) u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return u;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

double positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DataError(std::string(what) + " must be positive and finite");
  }
  return v;
}

void validate(const Distribution& dist) {
  std::visit(overloaded{
                 [](const Gaussian& g) { positive(g.sigma, "gaussian sigma"); },
                 [](const Laplacian& l) { positive(l.scale, "laplacian scale"); },
                 [](const GaussianMixture& m) {
                   positive(m.sigma, "gaussian_mixture sigma");
                   if (!std::isfinite(m.mu)) throw DataError("gaussian_mixture mu must be finite");
                 },
                 [](const Uniform& u) { positive(u.half_width, "uniform half_width"); },
             },
             dist);
}

double draw(const Distribution& dist, Stream& rng) {
  return std::visit(
      overloaded{
          [&](const Gaussian& g) { return g.sigma * rng.normal(); },
          [&](const Laplacian& l) {
            const double u = rng.uniform() - 0.5;
            const double mag = -l.scale * std::log1p(-2.0 * std::abs(u));
            return u < 0.0 ? -mag : mag;
          },
          [&](const GaussianMixture& m) {
            const double centre = rng.uniform() < 0.5 ? -m.mu : m.mu;
            return centre + m.sigma * rng.normal();
          },
          [&](const Uniform& u) { return (2.0 * rng.uniform() - 1.0) * u.half_width; },
      },
      dist);
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

double variance(const Distribution& dist) {
  return std::visit(overloaded{
                        [](const Gaussian& g) { return g.sigma * g.sigma; },
                        [](const Laplacian& l) { return 2.0 * l.scale * l.scale; },
                        [](const GaussianMixture& m) { return m.mu * m.mu + m.sigma * m.sigma; },
                        [](const Uniform& u) { return u.half_width * u.half_width / 3.0; },
                    },
                    dist);
}

std::string to_string(const Distribution& dist) {
  return std::visit(
      overloaded{
          [](const Gaussian& g) { return "gaussian:" + fmt(g.sigma); },
          [](const Laplacian& l) { return "laplacian:" + fmt(l.scale); },
          [](const GaussianMixture& m) {
            return "gaussian_mixture:" + fmt(m.mu) + ":" + fmt(m.sigma);
          },
          [](const Uniform& u) { return "uniform:" + fmt(u.half_width); },
      },
      dist);
}

Distribution parse_distribution(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts[0];
  auto arg = [&](std::size_t i, double fallback) {
    return parts.size() > i ? parse_number(parts[i]) : fallback;
  };
  const std::size_t max_args = kind == "gaussian_mixture" ? 3 : 2;
  if (parts.size() > max_args) throw DataError("too many parameters in '" + std::string(text) + "'");

  Distribution out;
  if (kind == "gaussian") {
    out = Gaussian{arg(1, 1.0)};
  } else if (kind == "laplacian") {
    out = Laplacian{arg(1, 1.0)};
  } else if (kind == "gaussian_mixture") {
    out = GaussianMixture{arg(1, 2.0), arg(2, 0.5)};
  } else if (kind == "uniform") {
    out = Uniform{arg(1, 1.0)};
  } else {
    throw DataError("unknown distribution '" + std::string(kind) + "'");
  }
  validate(out);
  return out;
}

SourceSpec parse_source_spec(std::string_view text) {
  SourceSpec spec;
  for (auto part : split(text, ',')) spec.push_back(parse_distribution(part));
  return spec;
}

DataMatrix sample_sources(const SourceSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DataError("sample_sources: n must be at least 1");
  if (spec.empty()) throw DataError("sample_sources: empty source spec");
  DataMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(spec.size()));
  for (std::size_t j = 0; j < spec.size(); ++j) {
    validate(spec[j]);
    Stream rng(seed, j);
    for (std::size_t i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = draw(spec[j], rng);
    }
  }
  return out;
}

DataMatrix mix(const DataMatrix& sources, const Eigen::MatrixXd& a) {
  require_square(a, "mix");
  if (a.cols() != sources.cols()) {
    throw DimensionError("mix: mixing matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", sources have " +
                         std::to_string(sources.cols()) + " dimensions");
  }
  invert(a);  // rejects singular mixing
  return sources * a.transpose();
}

Preset preset(std::string_view name) {
  if (name == "x_formation") {
    Eigen::Vector2d a(1.0, 0.35);
    Eigen::Vector2d b(0.35, 1.0);
    Eigen::MatrixXd m(2, 2);
    m.col(0) = a.normalized();
    m.col(1) = b.normalized();
    return {"x_formation", {Laplacian{1.0}, Laplacian{1.0}}, m};
  }
  if (name == "bimodal_unimodal") {
    return {"bimodal_unimodal", {GaussianMixture{2.0, 0.5}, Gaussian{1.0}},
            rotation_2d(45.0).matrix()};
  }
  if (name == "gaussian_isotropic") {
    return {"gaussian_isotropic", {Gaussian{1.0}, Gaussian{1.0}}, Eigen::MatrixXd::Identity(2, 2)};
  }
  throw DataError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"x_formation", "bimodal_unimodal", "gaussian_isotropic"};
}

MixtureDataset make_dataset(const SourceSpec& spec, const Eigen::MatrixXd& mixing, std::size_t n,
                            std::uint64_t seed) {
  MixtureDataset out;
  out.sources = sample_sources(spec, n, seed);
  out.observed = mix(out.sources, mixing);
  out.mixing = mixing;
  out.seed = seed;
  out.spec = spec;
  return out;
}

Eigen::MatrixXd random_orthogonal(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("random_orthogonal: d must be positive");
  Stream rng(seed, 0x6f7274686f);
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace ica

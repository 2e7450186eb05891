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

#include "ica/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>

namespace ica {

namespace {

constexpr double kDegenerateFloor = 1e-12;
constexpr double kMaxDegenerateFraction = 0.01;

// Neumaier compensated summation.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Summing sorted terms makes the result a function of the multiset of
// terms only, so reordering samples is bit-exact.
double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  Accumulator total;
  for (double t : terms) total.add(t);
  return total.value();
}

void check_degenerate(std::size_t degenerate, std::size_t n, const char* what) {
  if (static_cast<double>(degenerate) > kMaxDegenerateFraction * static_cast<double>(n)) {
    throw DegeneracyError(std::string(what) + ": " + std::to_string(degenerate) + " of " +
                              std::to_string(n) + " points have coincident neighbours",
                          degenerate, n);
  }
}

// Terms produced in sorted-sample order. Adding them in mirrored pairs
// (first + last, second + second-to-last, ...) gives the same result when
// the sequence is reversed, which is what negating the samples does.
double mirrored_sum(const std::vector<double>& terms) {
  const std::size_t n = terms.size();
  Accumulator total;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const auto [lo, hi] = std::minmax(terms[i], terms[n - 1 - i]);
    total.add(lo);
    total.add(hi);
  }
  if (n % 2 == 1) total.add(terms[n / 2]);
  return total.value();
}

}  // namespace

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::Marginal1nn:
      return "marginal-1nn";
    case Estimator::JointKnn:
      return "joint-knn";
  }
  return "unknown";
}

namespace detail {

double digamma(std::size_t n) {
  if (n == 0) throw DataError("digamma: argument must be positive");
  constexpr double euler_gamma = 0.57721566490153286061;
  if (n <= 32) {
    double acc = -euler_gamma;
    for (std::size_t k = 1; k < n; ++k) acc += 1.0 / static_cast<double>(k);
    return acc;
  }
  // asymptotic series; error below 1e-16 for x > 32
  const double x = static_cast<double>(n);
  const double x2 = 1.0 / (x * x);
  return std::log(x) - 0.5 / x -
         x2 * (1.0 / 12.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 252.0 - x2 * (1.0 / 240.0))));
}

double unit_ball_volume(int d) {
  const double half = 0.5 * static_cast<double>(d);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

}  // namespace detail

EntropyEstimate marginal_entropy(std::span<const double> samples, int k) {
  const std::size_t n = samples.size();
  if (n < 10) throw DataError("marginal_entropy: need at least 10 samples");
  if (k < 1 || k > 20) throw DataError("marginal_entropy: k must be in [1, 20]");

  std::vector<double> x(samples.begin(), samples.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw DataError("marginal_entropy: non-finite sample");
  }
  std::sort(x.begin(), x.end());
  const double spread = x.back() - x.front();
  if (!(spread > 0.0)) throw DataError("marginal_entropy: all samples identical");
  const double floor = kDegenerateFloor * spread;

  std::vector<double> terms;
  terms.reserve(n);
  std::size_t degenerate = 0;
  if (k == 1) {
    // nearest distinct neighbour: runs of equal values share one distance
    std::size_t run_begin = 0;
    while (run_begin < n) {
      std::size_t run_end = run_begin + 1;
      while (run_end < n && x[run_end] == x[run_begin]) ++run_end;

      const double v = x[run_begin];
      double dist = std::numeric_limits<double>::infinity();
      if (run_begin > 0) dist = std::min(dist, v - x[run_begin - 1]);
      if (run_end < n) dist = std::min(dist, x[run_end] - v);
      const std::size_t count = run_end - run_begin;
      if (dist < floor) {
        dist = floor;
        degenerate += count;
      }
      terms.insert(terms.end(), count, std::log(2.0 * dist));
      run_begin = run_end;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      // merge outwards from i; the k-th step gives the k-th neighbour
      std::size_t lo = i;
      std::size_t hi = i + 1;
      double dist = 0.0;
      for (int step = 0; step < k; ++step) {
        const double left = lo > 0 ? x[i] - x[lo - 1] : std::numeric_limits<double>::infinity();
        const double right = hi < n ? x[hi] - x[i] : std::numeric_limits<double>::infinity();
        if (left <= right) {
          dist = left;
          --lo;
        } else {
          dist = right;
          ++hi;
        }
      }
      if (dist < floor) {
        dist = floor;
        ++degenerate;
      }
      terms.push_back(std::log(2.0 * dist));
    }
  }
  check_degenerate(degenerate, n, "marginal_entropy");

  const double mean_log = mirrored_sum(terms) / static_cast<double>(n);
  const double nats =
      detail::digamma(n) - detail::digamma(static_cast<std::size_t>(k)) + mean_log;
  return {nats / std::numbers::ln2, n, Estimator::Marginal1nn, k, degenerate};
}

EntropyEstimate joint_entropy(const DataMatrix& data, int k) {
  const auto n = static_cast<std::size_t>(data.rows());
  const auto d = static_cast<std::size_t>(data.cols());
  if (d == 0) throw DataError("joint_entropy: no dimensions");
  if (k < 1 || k > 20) throw DataError("joint_entropy: k must be in [1, 20]");
  if (n < 10 * d || n <= static_cast<std::size_t>(k)) {
    throw DataError("joint_entropy: need at least 10 samples per dimension");
  }
  require_finite(data, "joint_entropy");

  double spread = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = data.col(static_cast<Eigen::Index>(j));
    spread = std::max(spread, col.maxCoeff() - col.minCoeff());
  }
  if (!(spread > 0.0)) throw DataError("joint_entropy: all samples identical");
  const double floor = kDegenerateFloor * spread;

  // Exact k-NN search: points sorted on the first coordinate, scanning
  // outwards from each point until the first-coordinate gap alone exceeds the
  // current k-th distance.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data(static_cast<Eigen::Index>(a), 0) < data(static_cast<Eigen::Index>(b), 0);
  });
  std::vector<double> pts(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      pts[i * d + j] = data(static_cast<Eigen::Index>(order[i]), static_cast<Eigen::Index>(j));

  auto dist2 = [&](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = pts[a * d + j] - pts[b * d + j];
      acc += diff * diff;
    }
    return acc;
  };

  const auto kk = static_cast<std::size_t>(k);
  std::vector<double> terms;
  terms.reserve(n);
  std::size_t degenerate = 0;
  std::priority_queue<double> best;  // max-heap of the k smallest squared distances
  for (std::size_t i = 0; i < n; ++i) {
    best = {};
    const double xi = pts[i * d];
    auto consider = [&](std::size_t other) {
      const double r2 = dist2(i, other);
      if (best.size() < kk) {
        best.push(r2);
      } else if (r2 < best.top()) {
        best.pop();
        best.push(r2);
      }
    };
    std::size_t lo = i;
    std::size_t hi = i + 1;
    bool left_open = lo > 0;
    bool right_open = hi < n;
    while (left_open || right_open) {
      if (left_open) {
        const double gap = xi - pts[(lo - 1) * d];
        if (best.size() == kk && gap * gap > best.top()) {
          left_open = false;
        } else {
          consider(--lo);
          left_open = lo > 0;
        }
      }
      if (right_open) {
        const double gap = pts[hi * d] - xi;
        if (best.size() == kk && gap * gap > best.top()) {
          right_open = false;
        } else {
          consider(hi++);
          right_open = hi < n;
        }
      }
    }
    double r = std::sqrt(best.top());
    if (r < floor) {
      r = floor;
      ++degenerate;
    }
    terms.push_back(std::log(r));
  }
  check_degenerate(degenerate, n, "joint_entropy");

  const double dd = static_cast<double>(d);
  const double nats = detail::digamma(n) - detail::digamma(kk) +
                      std::log(detail::unit_ball_volume(static_cast<int>(d))) +
                      dd * sorted_sum(terms) / static_cast<double>(n);
  return {nats / std::numbers::ln2, n, Estimator::JointKnn, k, degenerate};
}

MultiInformationEstimate multi_information(const DataMatrix& data, const EntropyEstimate& joint) {
  if (static_cast<std::size_t>(data.rows()) != joint.n) {
    throw DimensionError("multi_information: joint estimate was computed on a different sample");
  }
  MultiInformationEstimate out;
  out.joint_bits = joint.bits;
  double total = 0.0;
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const auto col = data.col(j);
    const double h = marginal_entropy(std::span<const double>(col.data(), col.size())).bits;
    out.marginal_bits.push_back(h);
    total += h;
  }
  out.bits = total - out.joint_bits;
  if (out.bits < -0.2) {
    out.warnings.push_back("multi-information estimate " + std::to_string(out.bits) +
                           " bits is below -0.2; estimator bias dominates at this sample size");
  }
  return out;
}

MultiInformationEstimate multi_information(const DataMatrix& data, int k) {
  return multi_information(data, joint_entropy(data, k));
}

}  // namespace ica

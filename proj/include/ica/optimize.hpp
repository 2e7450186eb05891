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
#include <string>
#include <string_view>
#include <vector>

#include "ica/entropy.hpp"
#include "ica/linalg.hpp"
#include "ica/whitening.hpp"

namespace ica {

/// A d x d orthogonal matrix (rotation, possibly composed with a reflection).
/// Construction checks orthogonality to 1e-10.
class RotationMatrix {
 public:
  explicit RotationMatrix(Eigen::MatrixXd m);
  static RotationMatrix identity(Eigen::Index d);

  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Eigen::MatrixXd m_;
};

/// [[cos t, -sin t], [sin t, cos t]] with t in degrees.
RotationMatrix rotation_2d(double theta_deg);

/// Rows of data rotated by v: y_i = v * x_i. Each output column is
/// accumulated in input-column order, so permuting or negating rows of v
/// permutes or negates output columns bit-for-bit.
DataMatrix rotate(const Eigen::MatrixXd& v, const DataMatrix& data);

/// Throws NotWhitenedError unless the sample covariance of data is within
/// `tol` of the identity.
void require_whitened(const DataMatrix& data, double tol = 0.05);

/// Neighbour order of the marginal entropies inside the objective. The
/// 1-NN estimate is unbiased too but noisy enough at n = 2e4 that a flat
/// landscape shows ~0.1 bit of spurious structure; 4 neighbours halve that.
inline constexpr int kObjectiveMarginalK = 4;

/// Sum over dimensions of the marginal entropy of v * x_w, in bits, using
/// kObjectiveMarginalK neighbours.
///
/// For whitened input and orthogonal v this differs from the
/// multi-information of v * x_w only by the joint entropy of x_w, which no
/// rotation changes. Invariant under permutations and sign flips of the
/// rows of v, exactly.
double objective(const RotationMatrix& v, const DataMatrix& data_w);

struct SweepResult {
  std::vector<double> angles_deg;
  std::vector<double> objective_bits;
  std::optional<std::vector<double>> multi_info_bits;
  double argmin_deg = 0.0;            ///< refined minimizer
  double argmin_objective_bits = 0.0;
  std::size_t argmin_index = 0;       ///< best grid row

  double range_bits() const;          ///< max - min over the grid
};

/// Evaluates the objective on `steps` equally spaced angles in [0, 180) and
/// refines the best grid angle by golden-section search inside its two
/// neighbouring cells. With `with_multi_info`, also reports the
/// multi-information per angle (joint estimated once with `k` neighbours).
SweepResult sweep_2d(const DataMatrix& data_w, int steps, bool with_multi_info, int k = 3);

struct GivensOptions {
  int sweeps_max = 20;
  double angle_tolerance_deg = 0.1;
  int grid_steps = 90;
  double min_improvement_bits = 1e-3;
};

struct GivensResult {
  RotationMatrix rotation;
  bool converged = false;
  int sweeps = 0;
  /// objective after each completed sweep; element 0 is the starting value
  std::vector<double> objective_trace;
  /// largest max - min of any pair's landscape during the first sweep
  double first_sweep_range_bits = 0.0;
  double first_sweep_improvement_bits = 0.0;
};

/// Cyclic coordinate descent over Givens rotations of every coordinate pair.
///
/// Each pair angle is chosen by a grid over [0, 90) plus golden-section
/// refinement of the pair's two marginal entropies; a rotation is kept only
/// if it lowers the objective. Stops once a full sweep gains less than
/// `min_improvement_bits`, or after `sweeps_max` sweeps with
/// converged = false. The returned rotation is canonicalized.
GivensResult givens_descent(const DataMatrix& data_w, const GivensOptions& opts = {},
                            const std::optional<RotationMatrix>& start = std::nullopt);

/// Fourth-order blind identification.
///
/// Eigendecomposes C = (1/n) sum |x|^2 x x^T of whitened data and returns
/// E^T, canonicalized. Throws DegeneracyError when two eigenvalues of C are
/// not separated beyond sampling noise, which happens whenever sources share
/// the same kurtosis.
RotationMatrix fobi(const DataMatrix& data_w);

/// Reorders rows of v by descending kurtosis of the recovered marginals
/// (ties: by column of the largest-magnitude entry), then flips each row so
/// its largest-magnitude entry is positive.
RotationMatrix canonicalize(const Eigen::MatrixXd& v, const DataMatrix& data_w);

/// Excess kurtosis of each column.
Eigen::VectorXd excess_kurtosis(const DataMatrix& data);

enum class Method { Sweep2d, Givens, Fobi, FobiGivens };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct Warning {
  std::string code;
  std::string message;
};

struct FitOptions {
  GivensOptions givens;
  int sweep_steps = 180;
  /// A landscape whose max - min stays below this is treated as flat.
  double flat_range_bits = 0.1;
};

/// W = V D^(-1/2) E^T together with everything needed to apply and report it.
struct UnmixingModel {
  RotationMatrix rotation;
  WhiteningTransform whitening;
  Eigen::MatrixXd unmixing;         ///< W
  Eigen::MatrixXd mixing_estimate;  ///< W^-1; columns are the independent components
  double objective_bits = 0.0;
  Method method = Method::Givens;
  std::optional<double> argmin_deg;  ///< sweep2d only, measured in the data axes
  bool converged = true;
  int sweeps = 0;
  std::vector<Warning> warnings;

  bool has_warning(std::string_view code) const;
};

inline constexpr std::string_view kWarnUnidentifiable = "unidentifiable";
inline constexpr std::string_view kWarnNotConverged = "not_converged";

/// Center, whiten, then solve for the rotation with the chosen method.
UnmixingModel fit_ica(const DataMatrix& data, Method method, const FitOptions& opts = {});

/// Assembles a model from a whitening transform and a rotation.
UnmixingModel make_model(WhiteningTransform whitening, RotationMatrix rotation, Method method,
                         const DataMatrix& data_w);

/// s_hat = (x - mean) W^T
DataMatrix recover_sources(const UnmixingModel& model, const DataMatrix& data);

namespace detail {

/// Golden-section minimization of f on [lo, hi] down to an interval of `tol`.
template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

/// Sum of the marginal entropies of the two columns of [x, y] rotated by
/// theta. Shared by sweep_2d and the Givens pair solver.
double pair_objective(std::span<const double> x, std::span<const double> y, double theta_deg,
                      std::vector<double>& scratch_u, std::vector<double>& scratch_v);

struct PairSearch {
  double angle_deg;
  double value;
  std::size_t grid_index;
  std::vector<double> grid_values;
};

/// Grid of `steps` angles over [0, span_deg) then golden-section refinement
/// in the bracket around the best grid point.
PairSearch search_pair(std::span<const double> x, std::span<const double> y, int steps,
                       double span_deg, double tol_deg);

}  // namespace detail

}  // namespace ica

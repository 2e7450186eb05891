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

#include <sstream>

#include "ica/optimize.hpp"

namespace ica {

namespace {

Warning flat_warning(double range_bits, double threshold) {
  std::ostringstream msg;
  msg << "objective landscape is flat (range " << range_bits << " bits < " << threshold
      << "); data is possibly Gaussian and the rotation is not identifiable";
  return {std::string(kWarnUnidentifiable), msg.str()};
}

}  // namespace

UnmixingModel make_model(WhiteningTransform whitening, RotationMatrix rotation, Method method,
                         const DataMatrix& data_w) {
  Eigen::MatrixXd w = mat_mul(rotation.matrix(), whitening.matrix());
  Eigen::MatrixXd a = invert(w);
  const double obj = objective(rotation, data_w);
  return UnmixingModel{std::move(rotation), std::move(whitening), std::move(w), std::move(a),
                       obj, method, std::nullopt, true, 0, {}};
}

UnmixingModel fit_ica(const DataMatrix& data, Method method, const FitOptions& opts) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (d < 2) throw DimensionError("fit_ica: need at least 2 dimensions");
  if (n < 50 * d) {
    throw DataError("fit_ica: need at least " + std::to_string(50 * d) + " samples, got " +
                    std::to_string(n));
  }
  if (method == Method::Sweep2d && d != 2) {
    throw DimensionError("fit_ica: method sweep2d needs 2-D data");
  }

  WhiteningTransform whitening = fit_whitening(data);
  const DataMatrix data_w = apply_whitening(whitening, data);

  switch (method) {
    case Method::Sweep2d: {
      // Sweep in the measurement axes (symmetric whitening), so the reported
      // angle is the rotation between data axes and sources.
      const Eigen::MatrixXd frame = whitening.eigen().eigenvectors;
      const SweepResult sweep = sweep_2d(rotate(frame, data_w), opts.sweep_steps, false);
      const Eigen::MatrixXd v = rotation_2d(sweep.argmin_deg).matrix() * frame;
      UnmixingModel model =
          make_model(std::move(whitening), canonicalize(v, data_w), method, data_w);
      model.argmin_deg = sweep.argmin_deg;
      model.sweeps = 1;
      if (sweep.range_bits() < opts.flat_range_bits) {
        model.warnings.push_back(flat_warning(sweep.range_bits(), opts.flat_range_bits));
      }
      return model;
    }
    case Method::Fobi: {
      RotationMatrix v = fobi(data_w);
      return make_model(std::move(whitening), std::move(v), method, data_w);
    }
    case Method::Givens:
    case Method::FobiGivens: {
      std::optional<RotationMatrix> start;
      std::vector<Warning> warnings;
      if (method == Method::FobiGivens) {
        try {
          start = fobi(data_w);
        } catch (const DegeneracyError& e) {
          warnings.push_back({"fobi_degenerate", std::string(e.what()) +
                                                     "; descent started from the identity"});
        }
      }
      GivensResult res = givens_descent(data_w, opts.givens, start);
      UnmixingModel model = make_model(std::move(whitening), std::move(res.rotation), method, data_w);
      model.converged = res.converged;
      model.sweeps = res.sweeps;
      model.warnings = std::move(warnings);
      if (res.first_sweep_range_bits < opts.flat_range_bits) {
        model.warnings.push_back(flat_warning(res.first_sweep_range_bits, opts.flat_range_bits));
      }
      if (!res.converged) {
        model.warnings.push_back({std::string(kWarnNotConverged),
                                  "descent stopped after " + std::to_string(res.sweeps) +
                                      " sweeps without meeting the improvement tolerance"});
      }
      return model;
    }
  }
  throw DataError("fit_ica: unknown method");
}

DataMatrix recover_sources(const UnmixingModel& model, const DataMatrix& data) {
  if (data.cols() != model.unmixing.cols()) {
    throw DimensionError("recover_sources: data has " + std::to_string(data.cols()) +
                         " columns, model expects " + std::to_string(model.unmixing.cols()));
  }
  require_finite(data, "recover_sources");
  return (data.rowwise() - model.whitening.mean().transpose()) * model.unmixing.transpose();
}

}  // namespace ica

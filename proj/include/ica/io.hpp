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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ica/eval.hpp"
#include "ica/optimize.hpp"
#include "ica/synth.hpp"

namespace ica::io {

using json = nlohmann::json;

/// Shortest decimal form that parses back to the same double; '.' decimal
/// point regardless of locale.
std::string format_double(double v);

/// Header line x1,...,xd (or `header`) followed by one row per sample.
std::string format_csv(const DataMatrix& data, const std::vector<std::string>& header = {});
/// Expects a header line; every following non-empty line must have the same
/// number of numeric fields. Throws DataError with the offending line number.
DataMatrix parse_csv(std::string_view text);

DataMatrix read_csv(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// {"rows": r, "cols": c, "data": [[row 0], [row 1], ...]}
json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& j);
json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const json& j);

/// Everything a CLI run depends on. Serialized into every output document.
struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string preset;
  std::uint64_t n = 20000;
  std::uint64_t seed = 0;
  std::string method = "givens";
  int k = 3;
  int grid_steps = 90;
  int sweeps_max = 20;
  double angle_tolerance_deg = 0.1;
  int steps = 180;
  bool multi_info = false;
  std::string model;
  std::string truth;
  std::string mixing_override;
  std::string sources_override;
};

json to_json(const RunConfig& config);

/// Ground truth sidecar written next to generated data.
struct Truth {
  std::string preset;
  SourceSpec spec;
  Eigen::MatrixXd mixing;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::string mixing_override;
  std::string sources_override;
};

json truth_to_json(const Truth& truth, const RunConfig& config);
Truth truth_from_json(const json& j);

json model_to_json(const UnmixingModel& model, const RunConfig& config);
UnmixingModel model_from_json(const json& j);

json report_to_json(const RecoveryReport& report, const RunConfig& config);

}  // namespace ica::io

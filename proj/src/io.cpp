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

#include "ica/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ica::io {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_csv(const DataMatrix& data, const std::vector<std::string>& header) {
  std::string out;
  out.reserve(static_cast<std::size_t>(data.size()) * 24);
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    if (j > 0) out += ',';
    if (header.empty()) {
      out += 'x' + std::to_string(j + 1);
    } else {
      out += header.at(static_cast<std::size_t>(j));
    }
  }
  out += '\n';
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(data(i, j));
    }
    out += '\n';
  }
  return out;
}

DataMatrix parse_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;

  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }

    std::size_t fields = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string_view field =
          line.substr(start, comma == std::string_view::npos ? comma : comma - start);
      while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
      while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size() ||
          !std::isfinite(v)) {
        throw DataError("csv line " + std::to_string(line_no) + ": bad number '" +
                        std::string(field) + "'");
      }
      values.push_back(v);
      ++fields;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cols == 0) {
      cols = fields;
    } else if (fields != cols) {
      throw DataError("csv line " + std::to_string(line_no) + ": expected " +
                      std::to_string(cols) + " fields, got " + std::to_string(fields));
    }
    ++rows;
  }
  if (rows == 0) throw DataError("csv: no data rows");

  DataMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * cols + j];
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DataMatrix read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw DataError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DataError("cannot move output into place at '" + path.string() + "'");
  }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const json& data = j.at("data");
    if (rows < 1 || cols < 1 || static_cast<Eigen::Index>(data.size()) != rows) {
      throw DataError("matrix: row count does not match 'rows'");
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const json& row = data.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != cols) {
        throw DataError("matrix: row " + std::to_string(i) + " does not match 'cols'");
      }
      for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("matrix: ") + e.what());
  }
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  try {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
    return v;
  } catch (const json::exception& e) {
    throw DataError(std::string("vector: ") + e.what());
  }
}

json to_json(const RunConfig& c) {
  json out = {{"subcommand", c.subcommand}, {"seed", c.seed}};
  if (c.subcommand == "gen") {
    out["preset"] = c.preset;
    out["n"] = c.n;
    out["output"] = c.output;
    if (!c.mixing_override.empty()) out["mixing"] = c.mixing_override;
    if (!c.sources_override.empty()) out["sources"] = c.sources_override;
  } else if (c.subcommand == "ica") {
    out["input"] = c.input;
    out["n"] = c.n;
    out["output"] = c.output;
    out["method"] = c.method;
    out["k"] = c.k;
    out["grid_steps"] = c.grid_steps;
    out["sweeps_max"] = c.sweeps_max;
    out["angle_tolerance_deg"] = c.angle_tolerance_deg;
    out["steps"] = c.steps;
  } else if (c.subcommand == "sweep") {
    out["input"] = c.input;
    out["n"] = c.n;
    out["output"] = c.output;
    out["steps"] = c.steps;
    out["multi_info"] = c.multi_info;
    out["k"] = c.k;
  } else if (c.subcommand == "eval") {
    out["model"] = c.model;
    out["truth"] = c.truth;
    out["input"] = c.input;
    out["n"] = c.n;
    out["output"] = c.output;
    out["k"] = c.k;
  }
  return out;
}

json truth_to_json(const Truth& t, const RunConfig& config) {
  json spec = json::array();
  for (const auto& d : t.spec) spec.push_back(to_string(d));
  json out = {{"preset", t.preset},
              {"sources", spec},
              {"mixing", matrix_to_json(t.mixing)},
              {"seed", t.seed},
              {"n", t.n},
              {"config", to_json(config)}};
  if (!t.mixing_override.empty()) out["mixing_override"] = t.mixing_override;
  if (!t.sources_override.empty()) out["sources_override"] = t.sources_override;
  return out;
}

Truth truth_from_json(const json& j) {
  try {
    Truth t;
    t.preset = j.value("preset", std::string());
    for (const auto& s : j.at("sources")) t.spec.push_back(parse_distribution(s.get<std::string>()));
    t.mixing = matrix_from_json(j.at("mixing"));
    t.seed = j.at("seed").get<std::uint64_t>();
    t.n = j.at("n").get<std::uint64_t>();
    t.mixing_override = j.value("mixing_override", std::string());
    t.sources_override = j.value("sources_override", std::string());
    return t;
  } catch (const json::exception& e) {
    throw DataError(std::string("truth file: ") + e.what());
  }
}

json model_to_json(const UnmixingModel& m, const RunConfig& config) {
  json warnings = json::array();
  for (const auto& w : m.warnings) warnings.push_back({{"code", w.code}, {"message", w.message}});
  json out = {
      {"method", std::string(to_string(m.method))},
      {"dim", m.unmixing.rows()},
      {"mean", vector_to_json(m.whitening.mean())},
      {"eigenvalues", vector_to_json(m.whitening.eigen().eigenvalues)},
      {"eigenvectors", matrix_to_json(m.whitening.eigen().eigenvectors)},
      {"whitening", matrix_to_json(m.whitening.matrix())},
      {"rotation", matrix_to_json(m.rotation.matrix())},
      {"unmixing", matrix_to_json(m.unmixing)},
      {"mixing_estimate", matrix_to_json(m.mixing_estimate)},
      {"objective_bits", m.objective_bits},
      {"converged", m.converged},
      {"sweeps", m.sweeps},
      {"unidentifiable", m.has_warning(kWarnUnidentifiable)},
      {"warnings", std::move(warnings)},
      {"config", to_json(config)},
  };
  out["argmin_deg"] = m.argmin_deg ? json(*m.argmin_deg) : json(nullptr);
  return out;
}

UnmixingModel model_from_json(const json& j) {
  try {
    EigenDecomposition<double> eig{matrix_from_json(j.at("eigenvectors")),
                                   vector_from_json(j.at("eigenvalues"))};
    WhiteningTransform whitening(vector_from_json(j.at("mean")), std::move(eig));
    UnmixingModel m{RotationMatrix(matrix_from_json(j.at("rotation"))),
                    std::move(whitening),
                    matrix_from_json(j.at("unmixing")),
                    matrix_from_json(j.at("mixing_estimate")),
                    j.at("objective_bits").get<double>(),
                    parse_method(j.at("method").get<std::string>()),
                    std::nullopt,
                    j.value("converged", true),
                    j.value("sweeps", 0),
                    {}};
    if (j.contains("argmin_deg") && !j.at("argmin_deg").is_null()) {
      m.argmin_deg = j.at("argmin_deg").get<double>();
    }
    for (const auto& w : j.value("warnings", json::array())) {
      m.warnings.push_back({w.at("code").get<std::string>(), w.at("message").get<std::string>()});
    }
    if (m.unmixing.rows() != m.whitening.dim() || m.unmixing.cols() != m.whitening.dim()) {
      throw DimensionError("model: unmixing matrix does not match the whitening dimension");
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
}

json report_to_json(const RecoveryReport& r, const RunConfig& config) {
  json out = {{"amari_index", r.amari_index},
              {"gain_matrix", matrix_to_json(r.gain_matrix)},
              {"matched_permutation", r.matched_permutation},
              {"matched_signs", r.matched_signs},
              {"config", to_json(config)}};
  out["multi_info_bits"] = r.multi_info_bits ? json(*r.multi_info_bits) : json(nullptr);
  return out;
}

}  // namespace ica::io

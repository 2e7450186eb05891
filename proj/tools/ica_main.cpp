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

// ica: generate synthetic mixtures, fit ICA models, sweep 2-D rotations and
// score fits against ground truth.
//
// Exit codes: 0 success (warnings allowed), 1 usage error, 2 data error,
// 3 solver degeneracy.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "ica/eval.hpp"
#include "ica/io.hpp"
#include "ica/optimize.hpp"
#include "ica/synth.hpp"

namespace {

namespace fs = std::filesystem;
using ica::io::RunConfig;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Eigen::MatrixXd parse_mixing(const std::string& text, Eigen::Index d, std::uint64_t seed) {
  if (text == "random") return ica::random_orthogonal(d, seed);
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string field = text.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw UsageError("--mixing: bad number '" + field + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<Eigen::Index>(values.size()) != d * d) {
    throw UsageError("--mixing: expected " + std::to_string(d * d) + " values (row-major " +
                     std::to_string(d) + "x" + std::to_string(d) + "), got " +
                     std::to_string(values.size()));
  }
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = values[static_cast<std::size_t>(i * d + j)];
  return m;
}

ica::DataMatrix head_rows(ica::DataMatrix data, std::uint64_t n) {
  if (n == 0 || n >= static_cast<std::uint64_t>(data.rows())) return data;
  return data.topRows(static_cast<Eigen::Index>(n));
}

int run_gen(const RunConfig& cfg, const std::string& truth_out) {
  ica::io::Truth truth;
  ica::SourceSpec spec;
  Eigen::MatrixXd mixing;
  if (!cfg.preset.empty()) {
    auto p = ica::preset(cfg.preset);
    truth.preset = p.name;
    spec = std::move(p.spec);
    mixing = std::move(p.mixing);
  }
  if (!cfg.sources_override.empty()) {
    spec = ica::parse_source_spec(cfg.sources_override);
    truth.sources_override = cfg.sources_override;
    if (cfg.preset.empty() || mixing.rows() != static_cast<Eigen::Index>(spec.size())) {
      mixing.resize(0, 0);
    }
  }
  if (spec.empty()) throw UsageError("gen: give --preset or --sources");
  const auto d = static_cast<Eigen::Index>(spec.size());
  if (!cfg.mixing_override.empty()) {
    mixing = parse_mixing(cfg.mixing_override, d, cfg.seed);
    truth.mixing_override = cfg.mixing_override;
  }
  if (mixing.size() == 0) {
    throw UsageError("gen: sources have " + std::to_string(d) +
                     " dimensions; give a matching --mixing");
  }

  const auto ds = ica::make_dataset(spec, mixing, cfg.n, cfg.seed);
  truth.spec = spec;
  truth.mixing = mixing;
  truth.seed = cfg.seed;
  truth.n = cfg.n;

  ica::io::write_file_atomic(cfg.output, ica::io::format_csv(ds.observed));
  ica::io::write_file_atomic(truth_out, ica::io::truth_to_json(truth, cfg).dump(2) + "\n");
  std::cout << "wrote " << cfg.output << " (" << ds.observed.rows() << "x"
            << ds.observed.cols() << ") and " << truth_out << "\n";
  return 0;
}

int run_ica(const RunConfig& cfg) {
  const auto data = head_rows(ica::io::read_csv(cfg.input), cfg.n);
  ica::FitOptions opts;
  opts.givens.grid_steps = cfg.grid_steps;
  opts.givens.sweeps_max = cfg.sweeps_max;
  opts.givens.angle_tolerance_deg = cfg.angle_tolerance_deg;
  opts.sweep_steps = cfg.steps;
  ica::Method method;
  try {
    method = ica::parse_method(cfg.method);
  } catch (const ica::DataError& e) {
    throw UsageError(e.what());
  }
  const auto model = ica::fit_ica(data, method, opts);
  ica::io::write_file_atomic(cfg.output, ica::io::model_to_json(model, cfg).dump(2) + "\n");

  std::cout << "method " << ica::to_string(model.method) << "\n"
            << "objective_bits " << ica::io::format_double(model.objective_bits) << "\n";
  if (model.argmin_deg) std::cout << "argmin_deg " << ica::io::format_double(*model.argmin_deg) << "\n";
  for (const auto& w : model.warnings) std::cout << "warning " << w.code << ": " << w.message << "\n";
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  const auto data = head_rows(ica::io::read_csv(cfg.input), cfg.n);
  if (data.cols() != 2) {
    throw ica::DimensionError("sweep: needs 2-D data, got " + std::to_string(data.cols()) +
                              " columns");
  }
  // Symmetric whitening keeps the measurement axes, so angles are relative
  // to the data as recorded.
  const auto whitening = ica::fit_whitening(data);
  const auto data_w = ica::rotate(whitening.symmetric_matrix(),
                                  data.rowwise() - whitening.mean().transpose());
  const auto sweep = ica::sweep_2d(data_w, cfg.steps, cfg.multi_info, cfg.k);

  std::string csv = "angle_deg,objective_bits,multi_info_bits\n";
  for (std::size_t i = 0; i < sweep.angles_deg.size(); ++i) {
    csv += ica::io::format_double(sweep.angles_deg[i]) + ',' +
           ica::io::format_double(sweep.objective_bits[i]) + ',';
    if (sweep.multi_info_bits) csv += ica::io::format_double((*sweep.multi_info_bits)[i]);
    csv += '\n';
  }
  ica::io::write_file_atomic(cfg.output, csv);
  std::cout << "argmin_deg " << ica::io::format_double(sweep.argmin_deg) << "\n"
            << "range_bits " << ica::io::format_double(sweep.range_bits()) << "\n";
  return 0;
}

int run_eval(const RunConfig& cfg) {
  const auto model = ica::io::model_from_json(nlohmann::json::parse(ica::io::read_file(cfg.model)));
  const auto truth = ica::io::truth_from_json(nlohmann::json::parse(ica::io::read_file(cfg.truth)));

  ica::DataMatrix observed = cfg.input.empty()
                                 ? ica::make_dataset(truth.spec, truth.mixing, truth.n, truth.seed).observed
                                 : head_rows(ica::io::read_csv(cfg.input), cfg.n);
  const auto shat = ica::recover_sources(model, observed);
  const auto report = ica::evaluate(truth.mixing, model.unmixing, &shat, cfg.k);

  if (!cfg.output.empty()) {
    ica::io::write_file_atomic(cfg.output, ica::io::report_to_json(report, cfg).dump(2) + "\n");
  }
  std::cout << "amari_index " << ica::io::format_double(report.amari_index) << "\n"
            << "multi_info_bits " << ica::io::format_double(*report.multi_info_bits) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Independent component analysis: generate, fit, sweep, evaluate"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string truth_out;

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed");
    return sub->add_option("--n", cfg.n, "Sample count (gen) or number of rows to use (0 = all)");
  };

  auto* gen = app.add_subcommand("gen", "Generate a synthetic linear mixture");
  add_shared(gen);
  gen->add_option("-o,--output", cfg.output, "Observed data CSV")->required();
  gen->add_option("--preset", cfg.preset, "x_formation | bimodal_unimodal | gaussian_isotropic");
  gen->add_option("--mixing", cfg.mixing_override,
                  "Mixing matrix, comma-separated row-major, or 'random' (seeded orthogonal)");
  gen->add_option("--sources", cfg.sources_override,
                  "Source distributions, e.g. laplacian:1,gaussian_mixture:2:0.5,uniform:1");
  gen->add_option("--truth-out", truth_out, "Ground-truth JSON (default: truth.json next to -o)");

  auto* fit = app.add_subcommand("ica", "Fit an unmixing model");
  auto* fit_n = add_shared(fit);
  fit->add_option("input", cfg.input, "Observed data CSV")->required();
  fit->add_option("-o,--output", cfg.output, "Model JSON")->required();
  fit->add_option("--method", cfg.method, "sweep2d | givens | fobi | fobi+givens");
  fit->add_option("--k", cfg.k, "Neighbours for joint entropy estimates");
  fit->add_option("--grid-steps", cfg.grid_steps, "Grid points per Givens pair over [0, 90)");
  fit->add_option("--sweeps-max", cfg.sweeps_max, "Maximum Givens sweeps");
  fit->add_option("--angle-tol", cfg.angle_tolerance_deg, "Golden-section tolerance (degrees)");
  fit->add_option("--steps", cfg.steps, "Grid points over [0, 180) for sweep2d");

  auto* sweep = app.add_subcommand("sweep", "Objective and multi-information versus rotation angle");
  auto* sweep_n = add_shared(sweep);
  sweep->add_option("input", cfg.input, "2-D observed data CSV")->required();
  sweep->add_option("-o,--output", cfg.output, "Sweep CSV")->required();
  sweep->add_option("--steps", cfg.steps, "Grid points over [0, 180)");
  sweep->add_flag("--multi-info", cfg.multi_info, "Also report multi-information per angle");
  sweep->add_option("--k", cfg.k, "Neighbours for the joint entropy estimate");

  auto* eval = app.add_subcommand("eval", "Score a model against ground truth");
  auto* eval_n = add_shared(eval);
  eval->add_option("--model", cfg.model, "Model JSON")->required();
  eval->add_option("--truth", cfg.truth, "Ground-truth JSON")->required();
  eval->add_option("--data", cfg.input, "Observed data CSV (default: regenerate from truth)");
  eval->add_option("-o,--output", cfg.output, "Report JSON");
  eval->add_option("--k", cfg.k, "Neighbours for the joint entropy estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      cfg.subcommand = "gen";
      if (truth_out.empty()) truth_out = (fs::path(cfg.output).parent_path() / "truth.json").string();
      return run_gen(cfg, truth_out);
    }
    if (fit->parsed()) {
      cfg.subcommand = "ica";
      if (fit_n->count() == 0) cfg.n = 0;
      return run_ica(cfg);
    }
    if (sweep->parsed()) {
      cfg.subcommand = "sweep";
      if (sweep_n->count() == 0) cfg.n = 0;
      return run_sweep(cfg);
    }
    cfg.subcommand = "eval";
    if (eval_n->count() == 0) cfg.n = 0;
    return run_eval(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ica::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ica::Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
}

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

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ica/eval.hpp"
#include "ica/io.hpp"

namespace fs = std::filesystem;
using ica::io::json;

namespace {

fs::path workdir() {
  const char* env = std::getenv("ICA_TEST_TMP");
  const fs::path dir = env != nullptr ? fs::path(env) : fs::temp_directory_path() / "icakit_cli";
  static bool fresh = false;
  if (!fresh) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    fresh = true;
  }
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string log = path("last_output.txt");
  const std::string cmd = std::string(ICA_CLI_PATH) + " " + args + " > " + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ica::io::read_file(log)};
}

json load(const std::string& file) { return json::parse(ica::io::read_file(file)); }

double field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string k;
  std::string v;
  while (in >> k) {
    std::getline(in, v);
    if (k == key) return std::stod(v);
  }
  FAIL("missing key " << key << " in output:\n" << out);
  return 0.0;
}

}  // namespace

TEST_CASE("gen writes data and a truth sidecar") {
  const auto r = cli("gen --preset bimodal_unimodal --n 20000 --seed 7 -o " + path("bimodal.csv"));
  REQUIRE(r.code == 0);
  const auto data = ica::io::read_csv(path("bimodal.csv"));
  CHECK(data.rows() == 20000);
  CHECK(data.cols() == 2);
  const json truth = load(path("truth.json"));
  CHECK(truth.at("preset") == "bimodal_unimodal");
  CHECK(truth.at("seed") == 7);
  CHECK(truth.at("mixing").at("rows") == 2);
}

TEST_CASE("gen is byte-identical across runs") {
  const std::string args = "gen --preset x_formation --n 3000 --seed 3 -o " + path("det.csv") +
                           " --truth-out " + path("det_truth.json");
  REQUIRE(cli(args).code == 0);
  const std::string data1 = ica::io::read_file(path("det.csv"));
  const std::string truth1 = ica::io::read_file(path("det_truth.json"));
  REQUIRE(cli(args).code == 0);
  CHECK(ica::io::read_file(path("det.csv")) == data1);
  CHECK(ica::io::read_file(path("det_truth.json")) == truth1);
}

TEST_CASE("gen records a mixing override verbatim") {
  REQUIRE(cli("gen --preset x_formation --mixing 1,0.35,0.35,1 --n 500 -o " + path("ov.csv") +
              " --truth-out " + path("ov_truth.json"))
              .code == 0);
  const json truth = load(path("ov_truth.json"));
  CHECK(truth.at("mixing_override") == "1,0.35,0.35,1");
  CHECK(truth.at("config").at("mixing") == "1,0.35,0.35,1");
  CHECK(truth.at("mixing").at("data")[0][1] == 0.35);
}

TEST_CASE("gen with custom sources and a random mixing") {
  REQUIRE(cli("gen --sources laplacian:1,uniform:1,gaussian_mixture:2:0.5 --mixing random "
              "--n 400 --seed 2 -o " + path("custom.csv") + " --truth-out " +
              path("custom_truth.json"))
              .code == 0);
  CHECK(ica::io::read_csv(path("custom.csv")).cols() == 3);
  CHECK(load(path("custom_truth.json")).at("sources").size() == 3);
}

TEST_CASE("ica with sweep2d reports the argmin angle") {
  REQUIRE(cli("gen --preset bimodal_unimodal --n 20000 --seed 7 -o " + path("b2.csv") +
              " --truth-out " + path("b2_truth.json"))
              .code == 0);
  const auto r = cli("ica " + path("b2.csv") + " --method sweep2d -o " + path("b2_model.json"));
  REQUIRE(r.code == 0);
  const json model = load(path("b2_model.json"));
  REQUIRE(model.at("argmin_deg").is_number());
  const double a = model.at("argmin_deg").get<double>();
  CHECK(std::min(std::abs(a - 45.0), std::abs(a - 135.0)) <= 2.0);
  CHECK(model.at("method") == "sweep2d");
  CHECK(model.at("config").at("n") == 0);
  CHECK(model.at("unidentifiable") == false);
}

TEST_CASE("ica on Gaussian data succeeds with the unidentifiable flag") {
  REQUIRE(cli("gen --preset gaussian_isotropic --n 20000 --seed 1 -o " + path("g.csv") +
              " --truth-out " + path("g_truth.json"))
              .code == 0);
  const auto r = cli("ica " + path("g.csv") + " -o " + path("g_model.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("unidentifiable") != std::string::npos);
  CHECK(load(path("g_model.json")).at("unidentifiable") == true);
}

TEST_CASE("gen, ica, eval end to end") {
  REQUIRE(cli("gen --preset x_formation --n 20000 --seed 5 -o " + path("x.csv") +
              " --truth-out " + path("x_truth.json"))
              .code == 0);
  REQUIRE(cli("ica " + path("x.csv") + " -o " + path("x_model.json")).code == 0);
  const auto r = cli("eval --model " + path("x_model.json") + " --truth " + path("x_truth.json") +
                     " -o " + path("x_report.json"));
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "amari_index") < 0.1);
  CHECK(field(r.out, "multi_info_bits") < 0.15);
  const json report = load(path("x_report.json"));
  CHECK(report.at("amari_index").get<double>() == field(r.out, "amari_index"));

  // regenerated data and the written CSV give the same report
  const auto with_data = cli("eval --model " + path("x_model.json") + " --truth " +
                             path("x_truth.json") + " --data " + path("x.csv"));
  CHECK(with_data.out == r.out);
}

TEST_CASE("eval of exact and permuted inverse models") {
  REQUIRE(cli("gen --preset x_formation --n 2000 --seed 6 -o " + path("e.csv") +
              " --truth-out " + path("e_truth.json"))
              .code == 0);
  REQUIRE(cli("ica " + path("e.csv") + " --grid-steps 30 -o " + path("e_model.json")).code == 0);
  const json truth = load(path("e_truth.json"));
  const Eigen::MatrixXd a = ica::io::matrix_from_json(truth.at("mixing"));

  json model = load(path("e_model.json"));
  model["unmixing"] = ica::io::matrix_to_json(ica::invert(a));
  ica::io::write_file_atomic(path("e_exact.json"), model.dump());
  const auto exact = cli("eval --model " + path("e_exact.json") + " --truth " + path("e_truth.json"));
  REQUIRE(exact.code == 0);
  CHECK(field(exact.out, "amari_index") < 1e-14);

  const Eigen::MatrixXd fitted = ica::io::matrix_from_json(load(path("e_model.json")).at("unmixing"));
  Eigen::MatrixXd permuted = fitted;
  permuted.row(0).swap(permuted.row(1));
  permuted.row(0) *= -1.0;
  model["unmixing"] = ica::io::matrix_to_json(permuted);
  ica::io::write_file_atomic(path("e_perm.json"), model.dump());
  const auto orig = cli("eval --model " + path("e_model.json") + " --truth " + path("e_truth.json"));
  const auto perm = cli("eval --model " + path("e_perm.json") + " --truth " + path("e_truth.json"));
  REQUIRE(orig.code == 0);
  REQUIRE(perm.code == 0);
  CHECK(field(perm.out, "amari_index") == field(orig.out, "amari_index"));
}

TEST_CASE("eval of a Givens fit on 3-D Laplacian data") {
  REQUIRE(cli("gen --sources laplacian:1,laplacian:1,laplacian:1 --mixing random --n 20000 "
              "--seed 4 -o " + path("l3.csv") + " --truth-out " + path("l3_truth.json"))
              .code == 0);
  REQUIRE(cli("ica " + path("l3.csv") + " --method givens -o " + path("l3_model.json")).code == 0);
  const auto r = cli("eval --model " + path("l3_model.json") + " --truth " + path("l3_truth.json"));
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "amari_index") < 0.1);
}

TEST_CASE("sweep writes one row per step") {
  REQUIRE(cli("gen --preset bimodal_unimodal --n 20000 --seed 7 -o " + path("s.csv") +
              " --truth-out " + path("s_truth.json"))
              .code == 0);
  const auto r = cli("sweep " + path("s.csv") + " --steps 180 --multi-info -o " + path("sweep.csv"));
  REQUIRE(r.code == 0);
  const std::string text = ica::io::read_file(path("sweep.csv"));
  CHECK(text.rfind("angle_deg,objective_bits,multi_info_bits\n", 0) == 0);
  const auto table = ica::io::parse_csv(text);
  REQUIRE(table.rows() == 180);
  Eigen::Index best = 0;
  table.col(1).minCoeff(&best);
  const double angle = table(best, 0);
  CHECK(std::min(std::abs(angle - 45.0), std::abs(angle - 135.0)) <= 2.0);
  CHECK(table(best, 2) <= 0.1);

  REQUIRE(cli("sweep " + path("s.csv") + " --steps 36 -o " + path("sweep36.csv")).code == 0);
  const std::string plain = ica::io::read_file(path("sweep36.csv"));
  CHECK(std::count(plain.begin(), plain.end(), '\n') == 37);
  CHECK(plain.find(",\n") != std::string::npos);  // multi-information left blank
}

TEST_CASE("exit codes") {
  CHECK(cli("").code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("gen --preset x_formation").code == 1);  // missing -o
  CHECK(cli("gen --preset x_formation --mixing 1,2,3 -o " + path("bad.csv")).code == 1);
  CHECK(cli("ica " + path("x.csv") + " --method infomax -o " + path("m.json")).code == 1);

  CHECK(cli("gen --preset nope -o " + path("bad.csv")).code == 2);
  ica::io::write_file_atomic(path("malformed.csv"), "x1,x2\n1,2\n3,oops\n");
  const auto malformed = cli("ica " + path("malformed.csv") + " -o " + path("m.json"));
  CHECK(malformed.code == 2);
  CHECK(malformed.out.find("line 3") != std::string::npos);
  CHECK(cli("ica " + path("does_not_exist.csv") + " -o " + path("m.json")).code == 2);
  CHECK(cli("sweep " + path("custom.csv") + " -o " + path("sw.csv")).code == 2);
  ica::io::write_file_atomic(path("broken.json"), "{ not json");
  CHECK(cli("eval --model " + path("broken.json") + " --truth " + path("x_truth.json")).code == 2);

  // two equal-kurtosis Laplacians: fobi is degenerate
  CHECK(cli("ica " + path("x.csv") + " --method fobi -o " + path("m.json")).code == 3);
  REQUIRE(cli("gen --preset x_formation --mixing 1,2,2,4 -o " + path("sing.csv")).code == 3);
}

TEST_CASE("eval reports are identical across runs") {
  const std::string args = "eval --model " + path("x_model.json") + " --truth " +
                           path("x_truth.json") + " -o " + path("x_report2.json");
  REQUIRE(cli(args).code == 0);
  const std::string first = ica::io::read_file(path("x_report2.json"));
  REQUIRE(cli(args).code == 0);
  CHECK(ica::io::read_file(path("x_report2.json")) == first);
}

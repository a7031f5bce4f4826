/*
 * Copyright 2026 The semilab Authors
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
 *
 */

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "semilab/runner.hpp"

using namespace semilab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("semilab_runner_" + name);
  fs::remove_all(dir);
  return dir;
}

/// Rows of a CSV as vectors of strings, header first.
std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(slurp(p));
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kBatch = R"({
  "experiments": [
    {"name": "radial", "kind": "examples", "family": "radial_d3", "lambda": 1, "a": [1, 0.1, 0.01]},
    {"name": "ou", "kind": "exhaust", "field": "ou", "lambda": [1, 2], "radii": [2, 4, 6, 8], "t": [0.1]},
    {"name": "shift", "kind": "examples", "family": "shift_weighted", "n": [1, 4, "inf"], "t": [0.25]},
    {"name": "poly", "kind": "exhaust", "field": {"name": "polynomial", "diffusion": [1], "drift": [0, -1]},
     "radii": [2, 4, 8], "compact": [-1, 1], "h": 0.05}
  ]
})";

}  // namespace

TEST_CASE("format_number writes 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(std::stod(format_number(M_PI)) == M_PI);
  CHECK(format_number(INFINITY) == "inf");
}

TEST_CASE("parse_config: defaults, single experiments and field paths in errors") {
  const auto single = parse_config(R"({"kind": "exhaust"})");
  REQUIRE(single.experiments.size() == 1);
  CHECK(single.experiments[0].name == "exhaust");
  CHECK(single.experiments[0].field == "ou");
  CHECK(single.output_dir == "lab_out");

  const auto batch = parse_config(kBatch);
  CHECK(batch.experiments.size() == 4);
  CHECK(batch.experiments[2].orders == std::vector<int>{1, 4, 0});
  CHECK(batch.experiments[3].drift == std::vector<double>{0, -1});

  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"kind": "exhaust", "radii": [2, 2]})").find("radii") != std::string::npos);
  CHECK(message(R"({"kind": "exhaust", "tolerance": 0})").find("tolerance") != std::string::npos);
  CHECK(message(R"({"kind": "exhaust", "lambda": [1, -1]})").find("lambda[1]") != std::string::npos);
  CHECK(message(R"({"kind": "exhaust", "field": "nope"})").find("field") != std::string::npos);
  CHECK(message(R"({"kind": "examples", "family": "nope"})").find("family") != std::string::npos);
  CHECK(message(R"({"kind": "bogus"})").find("kind") != std::string::npos);
  CHECK(message(R"({"kind": "exhaust", "typo": 1})").find("$.typo") != std::string::npos);
  CHECK(message("{\"kind\": \"exhaust\",\n  oops}").find("line 2") != std::string::npos);
  CHECK(message(R"({"experiments": [{"kind": "suite"}, {"kind": "suite"}]})").find("duplicate") != std::string::npos);
  CHECK(message(R"({"experiments": [{"kind": "examples", "n": [0]}]})").find("n[0]") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("apply_overrides replaces fields on every experiment") {
  auto config = parse_config(kBatch);
  Overrides o;
  o.lambdas = std::vector<double>{3.0};
  o.output_dir = "elsewhere";
  apply_overrides(config, o);
  CHECK(config.output_dir == "elsewhere");
  for (const auto& e : config.experiments) CHECK(e.lambdas == std::vector<double>{3.0});
  o.radii = std::vector<double>{4.0, 2.0};
  apply_overrides(config, o);
  CHECK_THROWS_AS(validate(config), ConfigError);
}

TEST_CASE("run_experiments: artifacts, contents and byte-identical reruns") {
  auto config = parse_config(kBatch);
  config.output_dir = scratch("batch").string();
  const auto outcomes = run_experiments(config);
  REQUIRE(outcomes.size() == 4);
  for (const auto& o : outcomes) {
    INFO(o.name << ": " << o.message);
    CHECK(o.exit_code == kExitPass);
  }
  CHECK(combined_exit_code(outcomes) == kExitPass);

  // Every file named in report.json exists and parses.
  for (const auto& e : config.experiments) {
    const fs::path dir = fs::path(config.output_dir) / e.name;
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report.at("passed").get<bool>());
    for (const auto& f : report.at("files")) {
      const auto path = dir / f.get<std::string>();
      REQUIRE(fs::exists(path));
      if (path.extension() == ".json") {
        CHECK_FALSE(nlohmann::json::parse(slurp(path), nullptr, false).is_discarded());
        continue;
      }
      const auto rows = read_csv(path);
      REQUIRE(rows.size() > 1);
      const bool staged = rows[0] == std::vector<std::string>{"stage", "radius", "point_index", "x", "value"};
      const bool trace = rows[0] == std::vector<std::string>{"t", "x", "value"};
      CHECK((staged || trace));
      for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == rows[0].size());
        for (const auto& cell : rows[i]) CHECK_NOTHROW((void)std::stod(cell));
      }
    }
  }

  // r = 2 for a = 1, lambda = 1.
  bool found = false;
  for (const auto& row : read_csv(fs::path(config.output_dir) / "radial" / "radial_d3_0.csv")) {
    if (row[0] == "1" && row[3] == "2") {
      CHECK(std::abs(std::stod(row[4]) - 0.8160603) <= 5e-8);
      found = true;
    }
  }
  CHECK(found);

  const auto ou = nlohmann::json::parse(slurp(fs::path(config.output_dir) / "ou" / "report.json"));
  CHECK(ou.at("monotone").get<bool>());
  CHECK(ou.at("converged").get<bool>());

  // Rerun into a second directory: identical bytes everywhere.
  auto again = config;
  again.output_dir = scratch("batch_again").string();
  run_experiments(again);
  for (const auto& entry : fs::recursive_directory_iterator(config.output_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), config.output_dir);
    INFO(rel.string());
    CHECK(slurp(entry.path()) == slurp(fs::path(again.output_dir) / rel));
  }
}

TEST_CASE("run_experiments: exit codes") {
  auto failing = parse_config(R"({"kind": "exhaust", "field": "laplace", "radii": [2, 4], "tolerance": 1e-6})");
  failing.output_dir = scratch("fail").string();
  const auto out = run_experiments(failing);
  CHECK(out[0].exit_code == kExitCheckFailed);
  CHECK(combined_exit_code(out) == kExitCheckFailed);

  auto missing = parse_config(R"({"kind": "suite", "fixtures": "/nonexistent/fixtures.json"})");
  missing.output_dir = scratch("missing").string();
  CHECK(run_experiments(missing)[0].exit_code == kExitConfig);

  // A polynomial diffusion that vanishes somewhere fails assembly: a configuration problem.
  auto degenerate = parse_config(
      R"({"kind": "exhaust", "field": {"name": "polynomial", "diffusion": [0, 1]}, "radii": [1, 2]})");
  degenerate.output_dir = scratch("degenerate").string();
  CHECK(run_experiments(degenerate)[0].exit_code == kExitConfig);

  std::vector<ExperimentOutcome> mixed(3);
  mixed[0].exit_code = kExitCheckFailed;
  mixed[1].exit_code = kExitNumerical;
  CHECK(combined_exit_code(mixed) == kExitNumerical);
  mixed[2].exit_code = kExitConfig;
  CHECK(combined_exit_code(mixed) == kExitConfig);
}

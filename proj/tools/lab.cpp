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

// Batch experiment driver:
//   lab run <config.json | examples | exhaust | suite> [--lambda ...] [--radii ...] [--field ...] [--out ...]
//                                                      [--seed ...] [--family ...] [--a ...] [--n ...] [--t ...] [--spacing ...]
// Exit codes: 0 all checks passed, 1 configuration/IO error, 2 a check failed,
// 3 numerical failure. LAB_THREADS caps the worker count.
#include <exception>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "semilab/runner.hpp"

namespace {

template <class T>
std::vector<T> split_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if constexpr (std::is_same_v<T, int>) {
      if (item == "inf") {
        out.push_back(0);
        continue;
      }
    }
    std::size_t used = 0;
    T value{};
    try {
      if constexpr (std::is_same_v<T, int>) {
        value = std::stoi(item, &used);
        if (value < 1) throw std::invalid_argument(item);
      } else {
        value = std::stod(item, &used);
      }
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw semilab::ConfigError(std::string(flag) + ": cannot parse '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw semilab::ConfigError(std::string(flag) + ": empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustion and sub-Markov semigroup experiments"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a configuration file or a named experiment kind");
  std::string target;
  std::string lambda, radii, times, inner, orders;
  semilab::Overrides o;
  std::string field, family, out;
  std::uint64_t seed = 0;
  double h = 0.0;
  run->add_option("target", target, "config.json, or one of examples | exhaust | suite")->required();
  auto* lambda_opt = run->add_option("--lambda", lambda, "resolvent parameter(s), comma-separated");
  auto* radii_opt = run->add_option("--radii", radii, "exhaustion radii, comma-separated and increasing");
  auto* t_opt = run->add_option("--t", times, "time(s), comma-separated");
  auto* a_opt = run->add_option("--a", inner, "inner radii of the radial example, comma-separated");
  auto* n_opt = run->add_option("--n", orders, "orders of the shift or scalar family ('inf' allowed)");
  auto* field_opt = run->add_option("--field", field, "coefficient field: laplace | ou | cubic_drift");
  auto* family_opt =
      run->add_option("--family", family, "example family: shift_weighted | shift_halfline | radial_d3 | scalar_decreasing");
  auto* out_opt = run->add_option("--out", out, "output directory");
  auto* seed_opt = run->add_option("--seed", seed, "suite seed");
  auto* h_opt = run->add_option("--spacing", h, "grid spacing");

  CLI11_PARSE(app, argc, argv);

  try {
    semilab::RunConfig config;
    if (target == "examples" || target == "exhaust" || target == "suite") {
      semilab::ExperimentConfig e;
      e.kind = semilab::experiment_kind_from_name(target);
      e.name = target;
      config.experiments.push_back(e);
    } else {
      config = semilab::load_config(target);
    }
    if (*lambda_opt) o.lambdas = split_list<double>(lambda, "--lambda");
    if (*radii_opt) o.radii = split_list<double>(radii, "--radii");
    if (*t_opt) o.times = split_list<double>(times, "--t");
    if (*a_opt) o.inner_radii = split_list<double>(inner, "--a");
    if (*n_opt) o.orders = split_list<int>(orders, "--n");
    if (*field_opt) o.field = field;
    if (*family_opt) o.family = family;
    if (*out_opt) o.output_dir = out;
    if (*seed_opt) o.seed = seed;
    if (*h_opt) o.h = h;
    semilab::apply_overrides(config, o);
    semilab::validate(config);

    const auto outcomes = semilab::run_experiments(config);
    for (const auto& r : outcomes) {
      std::cout << r.name << ": " << r.message << " (exit " << r.exit_code << ")\n";
      if (r.exit_code == semilab::kExitConfig || r.exit_code == semilab::kExitNumerical) {
        std::cerr << r.name << ": " << r.message << "\n";
      }
    }
    return semilab::combined_exit_code(outcomes);
  } catch (const semilab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return semilab::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return semilab::kExitConfig;
  }
}

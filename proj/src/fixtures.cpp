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

#include "semilab/fixtures.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semilab/errors.hpp"

namespace semilab {

Vector PortableRng::vector(std::size_t n, double lo, double hi) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = uniform(lo, hi);
  return v;
}

DenseMatrix random_sub_markov_generator(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw DomainError("random generator: size must be positive");
  PortableRng rng(seed);
  const auto m = static_cast<Eigen::Index>(n);
  DenseMatrix a = DenseMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double out = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j) continue;
      a(i, j) = rng.uniform() / static_cast<double>(n);
      out += a(i, j);
    }
    a(i, i) = -out - 0.5 * rng.uniform();
  }
  return a;
}

std::vector<GeneratorFixture> default_generator_fixtures() {
  constexpr std::array<std::size_t, 4> sizes{4, 8, 16, 32};
  std::vector<GeneratorFixture> out;
  for (std::size_t k = 0; k < 20; ++k) {
    const std::uint64_t seed = 1000 + k;
    const std::size_t n = sizes[k % sizes.size()];
    out.push_back({"random_" + std::to_string(k) + "_n" + std::to_string(n), seed,
                   random_sub_markov_generator(seed, n)});
  }
  return out;
}

std::string fixtures_to_json(const std::vector<GeneratorFixture>& fixtures) {
  // Hand-written so that every number carries exactly 17 significant digits.
  std::ostringstream os;
  os.precision(17);
  os << "{\n  \"fixtures\": [\n";
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    const auto& f = fixtures[k];
    os << "    {\n      \"name\": \"" << f.name << "\",\n      \"seed\": " << f.seed
       << ",\n      \"size\": " << f.entries.rows() << ",\n      \"entries\": [\n";
    for (Eigen::Index i = 0; i < f.entries.rows(); ++i) {
      os << "        [";
      for (Eigen::Index j = 0; j < f.entries.cols(); ++j) os << (j ? ", " : "") << f.entries(i, j);
      os << "]" << (i + 1 < f.entries.rows() ? "," : "") << "\n";
    }
    os << "      ]\n    }" << (k + 1 < fixtures.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::vector<GeneratorFixture> fixtures_from_json(const std::string& text) {
  std::vector<GeneratorFixture> out;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& item : doc.at("fixtures")) {
      GeneratorFixture f;
      f.name = item.at("name").get<std::string>();
      f.seed = item.at("seed").get<std::uint64_t>();
      const auto n = item.at("size").get<Eigen::Index>();
      const auto& rows = item.at("entries");
      if (static_cast<Eigen::Index>(rows.size()) != n) throw DomainError("fixture '" + f.name + "': row count");
      f.entries.resize(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != n) throw DomainError("fixture '" + f.name + "': column count");
        for (Eigen::Index j = 0; j < n; ++j) f.entries(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
      }
      out.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed fixture file: ") + e.what());
  }
  return out;
}

std::vector<GeneratorFixture> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open fixture file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fixtures_from_json(ss.str());
}

}  // namespace semilab

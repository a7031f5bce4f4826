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

#include "semilab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ios>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "semilab/analytic.hpp"
#include "semilab/checks.hpp"
#include "semilab/errors.hpp"
#include "semilab/exhaustion.hpp"
#include "semilab/parallel.hpp"

namespace semilab {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

ExperimentKind experiment_kind_from_name(const std::string& name) {
  if (name == "examples") return ExperimentKind::Examples;
  if (name == "exhaust") return ExperimentKind::Exhaust;
  if (name == "suite") return ExperimentKind::Suite;
  throw ConfigError("kind: expected one of examples, exhaust, suite; got '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Examples:
      return "examples";
    case ExperimentKind::Exhaust:
      return "exhaust";
    case ExperimentKind::Suite:
      return "suite";
  }
  return "unknown";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

// -- configuration ----------------------------------------------------------

namespace {

/// Typed accessors that report the JSON path of whatever is wrong.
class Reader {
 public:
  Reader(const nlohmann::json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [key, _] : node_.items()) {
      if (!known.count(key)) throw ConfigError(field(key) + ": unknown field");
    }
  }

  bool has(const char* key) const { return node_.contains(key); }

  std::string string(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    return v.get<std::string>();
  }
  double number(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    return v.get<double>();
  }
  std::int64_t integer(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
    return v.get<std::int64_t>();
  }
  bool boolean(const char* key) const {
    const auto& v = at(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + ": expected true or false");
    return v.get<bool>();
  }
  std::vector<double> numbers(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(field(key) + "[" + std::to_string(i) + "]: expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }
  std::vector<int> orders(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array()) throw ConfigError(field(key) + ": expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string where = field(key) + "[" + std::to_string(i) + "]";
      if (v[i].is_string() && v[i].get<std::string>() == "inf") {
        out.push_back(0);
      } else if (v[i].is_number_integer() && v[i].get<std::int64_t>() >= 1 && v[i].get<std::int64_t>() < (1 << 30)) {
        out.push_back(static_cast<int>(v[i].get<std::int64_t>()));
      } else {
        throw ConfigError(where + ": expected a positive integer or \"inf\"");
      }
    }
    return out;
  }
  const nlohmann::json& at(const char* key) const { return node_.at(key); }
  std::string field(const std::string& key) const { return path_ + "." + key; }

 private:
  const nlohmann::json& node_;
  std::string path_;
};

ExperimentConfig parse_experiment(const nlohmann::json& node, const std::string& path) {
  const Reader r(node, path);
  r.allow({"name", "kind", "field", "dimension", "h", "radii", "compact", "lambda", "t", "tolerance", "family", "a",
           "n", "extent", "seed", "fixtures", "builtin"});
  ExperimentConfig c;
  if (!r.has("kind")) throw ConfigError(r.field("kind") + ": required");
  try {
    c.kind = experiment_kind_from_name(r.string("kind"));
  } catch (const ConfigError& e) {
    throw ConfigError(path + "." + e.what());
  }
  c.name = r.has("name") ? r.string("name") : to_string(c.kind);
  if (r.has("field")) {
    const auto& f = r.at("field");
    if (f.is_string()) {
      c.field = f.get<std::string>();
    } else {
      const Reader fr(f, r.field("field"));
      fr.allow({"name", "diffusion", "drift"});
      c.field = fr.string("name");
      if (fr.has("diffusion")) c.diffusion = fr.numbers("diffusion");
      if (fr.has("drift")) c.drift = fr.numbers("drift");
    }
  }
  if (r.has("dimension")) c.dimension = static_cast<int>(r.integer("dimension"));
  if (r.has("h")) c.h = r.number("h");
  if (r.has("radii")) c.radii = r.numbers("radii");
  if (r.has("compact")) c.compact = r.numbers("compact");
  if (r.has("lambda")) c.lambdas = r.at("lambda").is_number() ? std::vector<double>{r.number("lambda")} : r.numbers("lambda");
  if (r.has("t")) c.times = r.at("t").is_number() ? std::vector<double>{r.number("t")} : r.numbers("t");
  if (r.has("tolerance")) c.tolerance = r.number("tolerance");
  if (r.has("family")) c.family = r.string("family");
  if (r.has("a")) c.inner_radii = r.at("a").is_number() ? std::vector<double>{r.number("a")} : r.numbers("a");
  if (r.has("n")) c.orders = r.orders("n");
  if (r.has("extent")) c.extent = r.number("extent");
  if (r.has("seed")) {
    const auto s = r.integer("seed");
    if (s < 0) throw ConfigError(r.field("seed") + ": must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (r.has("fixtures")) c.fixtures = r.string("fixtures");
  if (r.has("builtin")) c.builtin = r.boolean("builtin");
  return c;
}

void require_positive(const std::vector<double>& values, const std::string& where) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw ConfigError(where + "[" + std::to_string(i) + "]: must be positive and finite");
    }
  }
}

void validate_experiment(const ExperimentConfig& c, const std::string& path) {
  if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos || c.name == "." || c.name == "..") {
    throw ConfigError(path + ".name: must be a plain directory name");
  }
  if (!(c.tolerance > 0.0)) throw ConfigError(path + ".tolerance: must be > 0");
  if (c.h && !(*c.h > 0.0 && std::isfinite(*c.h))) throw ConfigError(path + ".h: must be > 0");
  if (c.extent && !(*c.extent > 0.0 && std::isfinite(*c.extent))) throw ConfigError(path + ".extent: must be > 0");
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    if (!(c.times[i] >= 0.0) || !std::isfinite(c.times[i])) {
      throw ConfigError(path + ".t[" + std::to_string(i) + "]: must be >= 0 and finite");
    }
  }
  require_positive(c.lambdas, path + ".lambda");
  if (c.lambdas.empty()) throw ConfigError(path + ".lambda: must not be empty");
  switch (c.kind) {
    case ExperimentKind::Exhaust: {
      if (c.dimension != 1 && c.dimension != 2) throw ConfigError(path + ".dimension: must be 1 or 2");
      const auto names = builtin_field_names();
      if (c.field == "polynomial") {
        if (c.diffusion.empty()) throw ConfigError(path + ".field.diffusion: required for a polynomial field");
      } else if (std::find(names.begin(), names.end(), c.field) == names.end()) {
        throw ConfigError(path + ".field: unknown field '" + c.field + "'");
      }
      if (c.radii.empty()) throw ConfigError(path + ".radii: must not be empty");
      require_positive(c.radii, path + ".radii");
      for (std::size_t i = 1; i < c.radii.size(); ++i) {
        if (!(c.radii[i] > c.radii[i - 1])) throw ConfigError(path + ".radii: must be strictly increasing");
      }
      const double h = c.h.value_or(0.02);
      if (!(c.radii.front() > 2.0 * h)) throw ConfigError(path + ".radii[0]: must exceed 2h");
      if (c.compact) {
        if (c.compact->size() != 2 || !((*c.compact)[0] < (*c.compact)[1])) {
          throw ConfigError(path + ".compact: expected [lo, hi] with lo < hi");
        }
        if (std::max(std::abs((*c.compact)[0]), std::abs((*c.compact)[1])) > c.radii.back()) {
          throw ConfigError(path + ".compact: must lie inside the largest radius");
        }
      }
      break;
    }
    case ExperimentKind::Examples: {
      try {
        analytic::family_from_name(c.family);
      } catch (const DomainError&) {
        throw ConfigError(path + ".family: unknown family '" + c.family + "'");
      }
      require_positive(c.inner_radii, path + ".a");
      if (c.inner_radii.empty()) throw ConfigError(path + ".a: must not be empty");
      break;
    }
    case ExperimentKind::Suite:
      break;
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("syntax error: ") + e.what());
  }
  RunConfig config;
  if (!doc.is_object()) throw ConfigError("$: expected an object");
  if (doc.contains("kind")) {
    config.experiments.push_back(parse_experiment(doc, "$"));
  } else {
    const Reader r(doc, "$");
    r.allow({"output_dir", "experiments"});
    if (r.has("output_dir")) config.output_dir = r.string("output_dir");
    if (!r.has("experiments") || !r.at("experiments").is_array()) {
      throw ConfigError("$.experiments: required array");
    }
    const auto& list = r.at("experiments");
    for (std::size_t i = 0; i < list.size(); ++i) {
      config.experiments.push_back(parse_experiment(list[i], "$.experiments[" + std::to_string(i) + "]"));
    }
  }
  validate(config);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_overrides(RunConfig& config, const Overrides& o) {
  if (o.output_dir) config.output_dir = *o.output_dir;
  for (auto& c : config.experiments) {
    if (o.lambdas) c.lambdas = *o.lambdas;
    if (o.radii) c.radii = *o.radii;
    if (o.times) c.times = *o.times;
    if (o.inner_radii) c.inner_radii = *o.inner_radii;
    if (o.orders) c.orders = *o.orders;
    if (o.field) c.field = *o.field;
    if (o.family) c.family = *o.family;
    if (o.seed) c.seed = *o.seed;
    if (o.h) c.h = *o.h;
  }
}

void validate(const RunConfig& config) {
  if (config.output_dir.empty()) throw ConfigError("$.output_dir: must not be empty");
  if (config.experiments.empty()) throw ConfigError("$.experiments: must not be empty");
  std::set<std::string> names;
  for (std::size_t i = 0; i < config.experiments.size(); ++i) {
    const std::string path = "$.experiments[" + std::to_string(i) + "]";
    validate_experiment(config.experiments[i], path);
    if (!names.insert(config.experiments[i].name).second) throw ConfigError(path + ".name: duplicate name");
  }
}

// -- running ----------------------------------------------------------------

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

/// Collects the files of one experiment directory.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw IoError("cannot write " + path.string());
    files_.push_back(name);
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

/// Header `stage,radius,point_index,x,value`; `radius` holds the stage
/// parameter and x the first coordinate.
std::string stage_csv(const StateGrid& grid, const std::vector<double>& params, const std::vector<Vector>& stages) {
  std::ostringstream os;
  os << "stage,radius,point_index,x,value\n";
  for (std::size_t s = 0; s < stages.size(); ++s) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << s + 1 << ',' << format_number(params[s]) << ',' << i << ',' << format_number(grid.x(i)) << ','
         << format_number(stages[s](static_cast<Eigen::Index>(i))) << '\n';
    }
  }
  return os.str();
}

std::vector<double> abscissae(const StateGrid& grid) {
  std::vector<double> xs(grid.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = grid.x(i);
  return xs;
}

/// Header `t,x,value`.
std::string trace_csv(const std::vector<double>& xs, const std::vector<double>& times,
                      const std::vector<Vector>& values) {
  std::ostringstream os;
  os << "t,x,value\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      os << format_number(times[k]) << ',' << format_number(xs[i]) << ','
         << format_number(values[k](static_cast<Eigen::Index>(i))) << '\n';
    }
  }
  return os.str();
}

Json check_json(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["inconclusive"] = r.inconclusive;
  j["worst_residual"] = number(r.worst_residual);
  j["tolerance"] = number(r.tolerance);
  j["location"] = r.location;
  j["notes"] = r.notes;
  return j;
}

CoefficientField field_of(const ExperimentConfig& c) {
  if (c.field == "polynomial") return CoefficientField::polynomial(c.diffusion, c.drift, c.dimension);
  return builtin_field(c.field, c.dimension);
}

Json series_json(const std::string& file, const char* kind, const char* param, double value,
                 const ExhaustionReport& rep) {
  Json j;
  j["file"] = file;
  j["kind"] = kind;
  j[param] = number(value);
  j["monotone"] = rep.monotone();
  j["converged"] = rep.converged;
  j["final_sup_diff"] = number(rep.final_sup_diff());
  j["violations"] = rep.violations.size();
  j["history"] = numbers(rep.history);
  return j;
}

bool run_exhaust(const ExperimentConfig& c, Artifacts& out, Json& report) {
  const auto field = field_of(c);
  std::optional<Region> compact;
  if (c.compact) compact = Region::interval((*c.compact)[0], (*c.compact)[1]);
  if (c.compact && c.dimension == 2) {
    compact = Region::box({(*c.compact)[0], (*c.compact)[0]}, {(*c.compact)[1], (*c.compact)[1]});
  }
  const auto schedule = ExhaustionSchedule::centered(c.dimension, c.h.value_or(0.02), c.radii, compact);
  const auto& grid = *schedule.grid();
  const Vector one = Vector::Ones(static_cast<Eigen::Index>(grid.size()));

  bool monotone = true;
  bool converged = true;
  double final_diff = 0.0;
  Json series = Json::array();
  auto fold = [&](const ExhaustionReport& rep) {
    monotone = monotone && rep.monotone();
    converged = converged && rep.converged;
    final_diff = std::max(final_diff, rep.final_sup_diff());
  };
  for (std::size_t k = 0; k < c.lambdas.size(); ++k) {
    const auto rep = exhaustion_resolvent(field, c.lambdas[k], one, schedule, c.tolerance);
    const std::string file = "resolvent_" + std::to_string(k) + ".csv";
    out.write(file, stage_csv(grid, c.radii, rep.stages));
    series.push_back(series_json(file, "resolvent", "lambda", c.lambdas[k], rep));
    fold(rep);
  }
  std::vector<Vector> limits;
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const auto rep = exhaustion_semigroup(field, c.times[k], one, schedule, c.tolerance);
    const std::string file = "semigroup_" + std::to_string(k) + ".csv";
    out.write(file, stage_csv(grid, c.radii, rep.stages));
    Json j = series_json(file, "semigroup", "t", c.times[k], rep);
    // sup over the convergence compact of 1 - T(t)1 for the limit.
    const Mask mask = schedule.convergence_mask();
    double loss = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) loss = std::max(loss, 1.0 - rep.limit(static_cast<Eigen::Index>(i)));
    }
    j["mass_loss"] = number(loss);
    series.push_back(j);
    limits.push_back(rep.limit);
    fold(rep);
  }
  if (!c.times.empty()) out.write("trace.csv", trace_csv(abscissae(grid), c.times, limits));

  Json verdicts = Json::array();
  const auto probe = hypothesis_b_probe(field, c.lambdas.front(), schedule);
  Json v;
  v["name"] = probe.name;
  v["lambda"] = number(c.lambdas.front());
  v["ratio"] = number(probe.ratio);
  v["verdict"] = to_string(probe.verdict);
  verdicts.push_back(v);

  report["field"] = c.field;
  report["dimension"] = c.dimension;
  report["h"] = number(grid.spacing());
  report["radii"] = numbers(c.radii);
  report["tolerance"] = number(c.tolerance);
  report["monotone"] = monotone;
  report["converged"] = converged;
  report["final_sup_diff"] = number(final_diff);
  report["series"] = series;
  report["verdicts"] = verdicts;
  return monotone && converged;
}

int order_value(int n) { return n == 0 ? analytic::kInfiniteOrder : n; }

double order_param(int n) { return n == 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(n); }

/// Largest pointwise decrease from one profile to the next.
double worst_decrease(const std::vector<Vector>& profiles) {
  double worst = 0.0;
  for (std::size_t s = 1; s < profiles.size(); ++s) {
    worst = std::max(worst, (profiles[s - 1] - profiles[s]).maxCoeff());
  }
  return worst;
}

bool run_examples(const ExperimentConfig& c, Artifacts& out, Json& report) {
  using namespace analytic;
  const Family family = family_from_name(c.family);
  Json series = Json::array();
  Json checks = Json::array();
  bool passed = true;
  auto add_check = [&](const CheckReport& r) {
    checks.push_back(check_json(r));
    passed = passed && r.passed;
  };
  report["family"] = c.family;

  switch (family) {
    case Family::RadialD3: {
      // One CSV per inner radius a; each holds the profiles for every lambda.
      const double h = c.h.value_or(0.01);
      const double extent = c.extent.value_or(4.0);
      const StateGrid grid = StateGrid::interval(0.0, extent, h);
      std::vector<double> sorted = c.inner_radii;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      for (double lambda : c.lambdas) {
        std::vector<Vector> profiles;
        for (double a : sorted) profiles.push_back(discretize_example(family, grid, {.lambda = lambda, .inner_radius = a}).profile);
        add_check(make_report("increasing_as_a_decreases:lambda=" + format_number(lambda), worst_decrease(profiles),
                              1e-12, {}, "max pointwise decrease from larger to smaller a"));
        double excess = 0.0;
        for (const auto& p : profiles) excess = std::max(excess, p.maxCoeff() - 1.0 / lambda);
        add_check(make_report("bounded_by_inverse_lambda:lambda=" + format_number(lambda), std::max(excess, 0.0), 1e-12));
      }
      for (std::size_t k = 0; k < c.inner_radii.size(); ++k) {
        const double a = c.inner_radii[k];
        std::vector<Vector> profiles;
        for (double lambda : c.lambdas) {
          profiles.push_back(discretize_example(family, grid, {.lambda = lambda, .inner_radius = a}).profile);
        }
        const std::string file = "radial_d3_" + std::to_string(k) + ".csv";
        out.write(file, stage_csv(grid, c.lambdas, profiles));
        Json j;
        j["file"] = file;
        j["kind"] = "resolvent_profile";
        j["a"] = number(a);
        j["stage_parameter"] = "lambda";
        series.push_back(j);
      }
      break;
    }
    case Family::ShiftWeighted:
    case Family::ShiftHalfline:
    case Family::ScalarDecreasing: {
      const bool weighted = family == Family::ShiftWeighted;
      const bool scalar = family == Family::ScalarDecreasing;
      std::vector<int> orders = c.orders;
      if (family == Family::ShiftHalfline) orders = {0};
      if (orders.empty()) orders = {1, 2, 4, 8, 16, 32, 0};
      const double h = c.h.value_or(weighted ? 1.0 / 64 : 1.0 / 32);
      const double extent = c.extent.value_or(weighted ? 1.0 : 8.0);
      // The scalar family lives on a single point, written as x = 0.
      const StateGrid grid = StateGrid::interval(h, extent, h);
      const std::vector<double> xs = scalar ? std::vector<double>{0.0} : abscissae(grid);
      std::vector<double> params;
      for (int n : orders) params.push_back(order_param(n));
      if (!scalar) {
        for (std::size_t l = 0; l < c.lambdas.size(); ++l) {
          std::vector<Vector> profiles;
          for (int n : orders) {
            profiles.push_back(discretize_example(family, grid, {.n = order_value(n), .lambda = c.lambdas[l]}).profile);
          }
          const std::string file = c.family + "_resolvent_" + std::to_string(l) + ".csv";
          out.write(file, stage_csv(grid, params, profiles));
          Json j;
          j["file"] = file;
          j["kind"] = "resolvent_profile";
          j["lambda"] = number(c.lambdas[l]);
          j["stage_parameter"] = "n";
          series.push_back(j);
          if (weighted) {
            // Sort by order (infinity last) before checking monotonicity in n.
            std::vector<std::size_t> idx(orders.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return params[a] < params[b]; });
            std::vector<Vector> sorted;
            for (auto i : idx) sorted.push_back(profiles[i]);
            add_check(make_report("increasing_in_n:lambda=" + format_number(c.lambdas[l]), worst_decrease(sorted), 1e-12));
          }
          double excess = 0.0;
          for (const auto& p : profiles) excess = std::max({excess, p.maxCoeff() - 1.0 / c.lambdas[l], -p.minCoeff()});
          add_check(make_report("bounded_by_inverse_lambda:lambda=" + format_number(c.lambdas[l]), excess, 1e-12));
        }
      }
      std::vector<double> times = c.times;
      if (scalar && times.empty()) times = {0.0, 0.1, 0.5, 1.0, 2.0};
      if (!times.empty()) {
        for (std::size_t k = 0; k < orders.size(); ++k) {
          std::vector<Vector> values;
          for (double t : times) {
            const auto ex = discretize_example(family, grid, {.n = order_value(orders[k]), .t = t});
            values.push_back(apply(*ex.kernel, Vector(Vector::Ones(static_cast<Eigen::Index>(xs.size())))));
          }
          const std::string file = c.family + "_trace_" + std::to_string(k) + ".csv";
          out.write(file, trace_csv(xs, times, values));
          Json j;
          j["file"] = file;
          j["kind"] = "semigroup_trace";
          j["n"] = number(params[k]);
          series.push_back(j);
        }
      }
      break;
    }
  }
  report["series"] = series;
  report["checks"] = checks;
  return passed;
}

bool run_suite_experiment(const ExperimentConfig& c, Artifacts& out, Json& report) {
  SuiteOptions options;
  options.seed = c.seed;
  options.builtin = c.builtin;
  if (!c.fixtures.empty()) {
    try {
      options.fixtures = load_fixtures(c.fixtures);
    } catch (const DomainError& e) {
      throw IoError(e.what());
    }
  }
  const auto reports = run_suite(options);
  Json checks = Json::array();
  for (const auto& r : reports) checks.push_back(check_json(r));
  out.write("checks.json", checks.dump(2) + "\n");
  report["seed"] = c.seed;
  report["fixtures"] = c.fixtures.empty() ? "default" : c.fixtures;
  report["checks"] = checks;
  return suite_passed(reports);
}

ExperimentOutcome run_one(const RunConfig& config, const ExperimentConfig& c) {
  ExperimentOutcome outcome;
  outcome.name = c.name;
  try {
    Artifacts out(fs::path(config.output_dir) / c.name);
    Json report;
    report["name"] = c.name;
    report["kind"] = to_string(c.kind);
    bool passed = false;
    switch (c.kind) {
      case ExperimentKind::Exhaust:
        passed = run_exhaust(c, out, report);
        break;
      case ExperimentKind::Examples:
        passed = run_examples(c, out, report);
        break;
      case ExperimentKind::Suite:
        passed = run_suite_experiment(c, out, report);
        break;
    }
    report["passed"] = passed;
    Json files = Json::array();
    for (const auto& f : out.files()) files.push_back(f);
    report["files"] = files;
    out.write("report.json", report.dump(2) + "\n");
    outcome.files = out.files();
    outcome.exit_code = passed ? kExitPass : kExitCheckFailed;
    outcome.message = passed ? "all checks passed" : "check failed";
  } catch (const IoError& e) {
    outcome.exit_code = kExitConfig;
    outcome.message = std::string("io: ") + e.what();
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitConfig;
    outcome.message = std::string("config: ") + e.what();
  } catch (const SolverError& e) {
    outcome.exit_code = kExitNumerical;
    outcome.message = to_string(c.kind) + ": solver: " + e.what();
  } catch (const InvariantError& e) {
    outcome.exit_code = kExitNumerical;
    outcome.message = to_string(c.kind) + ": invariant: " + e.what();
  } catch (const Error& e) {
    // Domain, dimension and assembly errors come from parameters the config chose.
    outcome.exit_code = kExitConfig;
    outcome.message = "config: " + to_string(c.kind) + ": " + e.what();
  }
  return outcome;
}

}  // namespace

std::vector<ExperimentOutcome> run_experiments(const RunConfig& config) {
  validate(config);
  std::vector<ExperimentOutcome> outcomes(config.experiments.size());
  parallel_for(config.experiments.size(), [&](std::size_t i) { outcomes[i] = run_one(config, config.experiments[i]); });
  return outcomes;
}

int combined_exit_code(const std::vector<ExperimentOutcome>& outcomes) {
  for (int code : {kExitConfig, kExitNumerical, kExitCheckFailed}) {
    for (const auto& o : outcomes) {
      if (o.exit_code == code) return code;
    }
  }
  return kExitPass;
}

}  // namespace semilab

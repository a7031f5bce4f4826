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

#include "semilab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "semilab/errors.hpp"
#include "semilab/parallel.hpp"

namespace semilab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Unit columns e_i for the probed states.
DenseMatrix probe_columns(std::size_t n) {
  const std::size_t stride = (n + kMaxProbeColumns - 1) / kMaxProbeColumns;
  const std::size_t cols = (n + stride - 1) / stride;
  DenseMatrix e = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  for (std::size_t c = 0; c < cols; ++c) e(static_cast<Eigen::Index>(c * stride), static_cast<Eigen::Index>(c)) = 1.0;
  return e;
}

double sup_abs(const DenseMatrix& m, Eigen::Index* row = nullptr, Eigen::Index* col = nullptr) {
  if (m.size() == 0) return 0.0;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  const double v = m.cwiseAbs().maxCoeff(&r, &c);
  if (row) *row = r;
  if (col) *col = c;
  return v;
}

double sup_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

}  // namespace

CheckReport make_report(std::string name, double residual, double tolerance, std::string location,
                        std::string notes) {
  CheckReport r;
  r.name = std::move(name);
  r.worst_residual = residual;
  r.tolerance = tolerance;
  r.passed = residual <= tolerance;
  r.location = std::move(location);
  r.notes = std::move(notes);
  return r;
}

CheckReport semigroup_law_check(const SemigroupOracle& semigroup, std::span<const double> t_list) {
  const DenseMatrix e = probe_columns(semigroup.size());
  std::map<double, DenseMatrix> orbit;
  auto at = [&](double t) -> const DenseMatrix& {
    auto it = orbit.find(t);
    if (it == orbit.end()) it = orbit.emplace(t, semigroup.apply_block(t, e)).first;
    return it->second;
  };
  double worst = 0.0;
  std::string where;
  for (double t : t_list) {
    for (double s : t_list) {
      Eigen::Index row = 0;
      const double r = sup_abs(DenseMatrix(at(t + s) - semigroup.apply_block(t, at(s))), &row);
      if (r >= worst) {
        worst = r;
        where = "t=" + fmt(t) + " s=" + fmt(s) + " state=" + std::to_string(row);
      }
    }
  }
  return make_report("semigroup_law", worst, kSemigroupLawTolerance, where,
                     std::to_string(e.cols()) + " indicator columns");
}

CheckReport resolvent_identity_check(const ResolventOracle& resolvent, std::span<const double> lambdas) {
  const DenseMatrix e = probe_columns(resolvent.size());
  std::map<double, DenseMatrix> cols;
  for (double l : lambdas) {
    if (!cols.contains(l)) cols.emplace(l, resolvent.apply_block(l, e));
  }
  double worst = 0.0;
  std::string where;
  for (double l : lambdas) {
    for (double m : lambdas) {
      const DenseMatrix lhs = cols.at(l) - cols.at(m) - (m - l) * resolvent.apply_block(l, cols.at(m));
      Eigen::Index row = 0;
      const double r = sup_abs(lhs, &row);
      if (r >= worst) {
        worst = r;
        where = "lambda=" + fmt(l) + " mu=" + fmt(m) + " state=" + std::to_string(row);
      }
    }
  }
  return make_report("resolvent_identity", worst, kResolventIdentityTolerance, where,
                     std::to_string(e.cols()) + " indicator columns");
}

namespace {

template <class Op>
CheckReport positivity_contraction(std::string name, std::string param, std::span<const double> params,
                                   const std::vector<Vector>& inputs, const Op& op) {
  double worst = 0.0;
  std::string where;
  for (double p : params) {
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const Vector& f = inputs[k];
      const Vector out = op(p, f);
      const bool nonnegative = f.size() == 0 || f.minCoeff() >= 0.0;
      const double negative = nonnegative && out.size() ? std::max(0.0, -out.minCoeff()) : 0.0;
      const double excess = std::max(0.0, sup_abs(out) - sup_abs(f));
      const double r = std::max(negative, excess);
      if (r >= worst) {
        worst = r;
        where = param + "=" + fmt(p) + " input=" + std::to_string(k);
      }
    }
  }
  return make_report(std::move(name), worst, kContractionTolerance, where,
                     "negative part of outputs of nonnegative inputs, or excess over ||f||");
}

}  // namespace

CheckReport positivity_contraction_check(const SemigroupOracle& semigroup, std::span<const double> t_list,
                                         const std::vector<Vector>& inputs) {
  return positivity_contraction("positivity_contraction:semigroup", "t", t_list, inputs,
                                [&](double t, const Vector& f) { return semigroup.apply(t, f); });
}

CheckReport positivity_contraction_check(const ResolventOracle& resolvent, std::span<const double> lambdas,
                                         const std::vector<Vector>& inputs) {
  return positivity_contraction("positivity_contraction:resolvent", "lambda", lambdas, inputs,
                                [&](double l, const Vector& f) { return Vector(l * resolvent.apply(l, f)); });
}

CheckReport post_widder_rate_check(const ResolventOracle& resolvent, const SemigroupOracle& semigroup, double t,
                                   std::span<const int> n_list, const Vector& f) {
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] != 2 * n_list[k - 1]) throw DomainError("post_widder_rate_check: orders must double");
  }
  const Vector ref = semigroup.apply(t, f);
  std::vector<double> errs;
  for (int n : n_list) errs.push_back(sup_abs(Vector(post_widder(resolvent, t, n, f) - ref)));
  std::ostringstream notes;
  notes << "errors:";
  for (double e : errs) notes << " " << fmt(e);
  double worst = 0.0;
  std::string where;
  for (std::size_t k = 1; k < errs.size(); ++k) {
    if (errs[k - 1] <= 1e-13) break;
    const double ratio = errs[k] / errs[k - 1];
    notes << (k == 1 ? "; ratios:" : "") << " " << fmt(ratio);
    if (std::abs(ratio - 0.5) >= worst) {
      worst = std::abs(ratio - 0.5);
      where = "n=" + std::to_string(n_list[k - 1]) + "->" + std::to_string(n_list[k]);
    }
  }
  if (!errs.empty() && errs.front() <= 1e-13) notes << "; vacuous (errors at round-off)";
  return make_report("post_widder_rate", worst, kPostWidderRatioTolerance, where, notes.str());
}

CheckReport duality_check(const KernelMatrix& kernel, std::uint64_t seed, int samples, std::string name) {
  PortableRng rng(seed);
  double worst = 0.0;
  std::string where;
  for (int k = 0; k < samples; ++k) {
    const Vector f = rng.vector(kernel.size(), -1.0, 1.0);
    const DualVector mu(rng.vector(kernel.size()));
    const double lhs = pairing(apply(kernel, f), mu);
    const double rhs = pairing(f, apply_adjoint(kernel, mu));
    const double scale = std::max(1e-300, sup_abs(f) * mu.mass() * std::max(1.0, kernel.bound()));
    const double r = std::abs(lhs - rhs) / scale;
    if (r >= worst) {
      worst = r;
      where = "sample=" + std::to_string(k);
    }
  }
  return make_report(std::move(name), worst, kDualityTolerance, where, "relative to ||f|| mass(mu) max(1, M)");
}

CheckReport joint_continuity_probe(std::string name, const OrbitSampler& sampler,
                                   const std::shared_ptr<const StateGrid>& grid, const Region& compact, double t0,
                                   double t1, int steps) {
  if (!(t1 > t0) || !(t0 >= 0.0) || steps < 1) throw DomainError("joint_continuity_probe: bad time window");
  auto level = [&](const std::shared_ptr<const StateGrid>& g, int n) {
    const Mask mask = g->mask(compact);
    const double dt = (t1 - t0) / n;
    double worst = 0.0;
    Vector prev;
    for (int k = 0; k <= n; ++k) {
      const Vector u = sampler(t0 + dt * k, g);
      worst = std::max(worst, adjacent_jump(*g, u, mask).max_jump);
      if (k > 0) {
        for (std::size_t i = 0; i < mask.size(); ++i) {
          const auto ii = static_cast<Eigen::Index>(i);
          if (mask[i]) worst = std::max(worst, std::abs(u(ii) - prev(ii)));
        }
      }
      prev = u;
    }
    return worst;
  };
  const double coarse = level(grid, steps);
  const double fine = level(std::make_shared<const StateGrid>(grid->refined()), 2 * steps);
  const double ratio = coarse > kOscillationFloor ? fine / coarse : 0.0;
  const Verdict verdict = classify_ratio(ratio);
  CheckReport r = make_report(std::move(name), ratio, kContinuousRatio, "t in [" + fmt(t0) + ", " + fmt(t1) + "]",
                              "oscillation " + fmt(coarse) + " -> " + fmt(fine) + ", " + to_string(verdict));
  r.inconclusive = verdict == Verdict::Inconclusive;
  return r;
}

CheckReport c0_uniform_convergence_check(std::span<const SemigroupOracle> stages, const SemigroupOracle& limit,
                                         const Vector& f, double horizon, int steps, double tol) {
  if (stages.empty() || steps < 1 || !(horizon > 0.0)) throw DomainError("c0_uniform_convergence_check: bad input");
  std::vector<double> gaps;
  for (const auto& s : stages) {
    double gap = sup_abs(Vector(s.generator().restrict(f) - limit.generator().restrict(f)));
    for (int k = 1; k <= steps; ++k) {
      const double t = horizon * k / steps;
      gap = std::max(gap, sup_abs(Vector(s.apply(t, f) - limit.apply(t, f))));
    }
    gaps.push_back(gap);
  }
  std::ostringstream notes;
  notes << "per-stage gaps:";
  for (double g : gaps) notes << " " << fmt(g);
  double residual = gaps.back();
  for (std::size_t k = 1; k < gaps.size(); ++k) {
    if (gaps[k] > gaps[k - 1] + 1e-12) {
      residual = kInf;
      notes << "; gap increases at stage " << k;
      break;
    }
  }
  return make_report("c0_uniform_convergence", residual, tol, "last stage", notes.str());
}

CheckReport generator_convergence_report(const CoefficientField& coeffs, const ExhaustionSchedule& schedule,
                                         const Vector& g, double tol) {
  const auto rep = generator_convergence_check(coeffs, schedule, g, tol);
  const std::size_t m = rep.u_gaps.size();
  std::ostringstream notes;
  notes << "u gaps:";
  for (double v : rep.u_gaps) notes << " " << fmt(v);
  notes << "; pair residual " << fmt(rep.pair_residual);
  const double gap = m >= 2 ? rep.u_gaps[m - 2] : 0.0;
  const double residual = rep.passed ? gap : kInf;
  if (!rep.passed && gap <= tol) notes << "; gaps not monotone or (u_n, f_n) off the graph of A_n";
  return make_report("generator_convergence", residual, tol, "second-to-last stage", notes.str());
}

// -- suite ------------------------------------------------------------------

namespace {

using Task = std::function<CheckReport()>;

std::vector<Vector> probe_inputs(std::uint64_t seed, std::size_t n) {
  PortableRng rng(seed);
  return {Vector::Ones(static_cast<Eigen::Index>(n)), rng.vector(n), rng.vector(n), rng.vector(n, -1.0, 1.0),
          rng.vector(n, -1.0, 1.0)};
}

CheckReport prefixed(const std::string& prefix, CheckReport r) {
  r.name = prefix + "/" + r.name;
  return r;
}

void operator_tasks(std::vector<Task>& tasks, const std::string& prefix, const GeneratorMatrix& a,
                    std::uint64_t seed, std::vector<double> ts) {
  auto s = std::make_shared<const SemigroupOracle>(a);
  auto r = std::make_shared<const ResolventOracle>(a);
  const std::size_t n = a.size();
  tasks.emplace_back([=] { return prefixed(prefix, semigroup_law_check(*s, ts)); });
  tasks.emplace_back([=] {
    const std::vector<double> ls{0.5, 1.0, 2.0};
    return prefixed(prefix, resolvent_identity_check(*r, ls));
  });
  tasks.emplace_back([=] {
    const std::vector<double> times{0.1, 1.0, 5.0};
    return prefixed(prefix, positivity_contraction_check(*s, times, probe_inputs(seed, n)));
  });
  tasks.emplace_back([=] {
    const std::vector<double> ls{0.5, 1.0, 2.0};
    return prefixed(prefix, positivity_contraction_check(*r, ls, probe_inputs(seed + 1, n)));
  });
  tasks.emplace_back([=] {
    const std::vector<int> orders{16, 32, 64, 128};
    return prefixed(prefix, post_widder_rate_check(*r, *s, 1.0, orders, a.restrict(Vector(Vector::Ones(
                                                                             static_cast<Eigen::Index>(n))))));
  });
  tasks.emplace_back([=] { return prefixed(prefix, duality_check(s->kernel(1.0), seed + 2, 16, "duality:semigroup")); });
  tasks.emplace_back([=] { return prefixed(prefix, duality_check(r->kernel(1.0), seed + 3, 16, "duality:resolvent")); });
}

Vector bump(const StateGrid& g) {
  return sample(g, [](std::span<const double> x) {
    const double r = std::abs(x[0]) / 0.5;
    return r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
  });
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteOptions& options) {
  std::vector<Task> tasks;
  for (const auto& fx : options.fixtures) {
    operator_tasks(tasks, fx.name, GeneratorMatrix::from_dense(fx.entries), options.seed ^ fx.seed, {0.1, 0.5, 1.0});
  }
  if (options.builtin) {
    auto grid = std::make_shared<const StateGrid>(StateGrid::interval(-4.0, 4.0, 1.0 / 32));
    std::uint64_t k = 0;
    for (const auto& name : builtin_field_names()) {
      operator_tasks(tasks, "field_" + name, assemble(builtin_field(name), 4.0, grid), options.seed + 100 * ++k,
                     {0.05, 0.1, 0.2});
    }
    const Region unit = Region::interval(-1.0, 1.0);
    for (const std::string name : {"laplace", "ou"}) {
      tasks.emplace_back([=] {
        // Stages on the radius-12 grid; the radius-12 stage is the reference limit.
        auto g = std::make_shared<const StateGrid>(StateGrid::interval(-12.0, 12.0, 0.05));
        const auto field = builtin_field(name);
        std::vector<SemigroupOracle> stages;
        for (double r : {2.0, 4.0, 6.0, 8.0}) stages.emplace_back(assemble(field, r, g));
        const SemigroupOracle limit(assemble(field, 12.0, g));
        return prefixed("field_" + name, c0_uniform_convergence_check(stages, limit, bump(*g), 1.0, 10, 1e-3));
      });
      tasks.emplace_back([=] {
        const auto s = ExhaustionSchedule::centered(1, 0.02, {2, 4, 6, 8}, unit);
        const Vector g = name == "ou" ? Vector(Vector::Ones(static_cast<Eigen::Index>(s.grid()->size())))
                                      : bump(*s.grid());
        return prefixed("field_" + name, generator_convergence_report(builtin_field(name), s, g, 1e-3));
      });
    }
    tasks.emplace_back([=] {
      const auto ou = CoefficientField::ornstein_uhlenbeck();
      const Region half(Region::interval(0.0, std::numeric_limits<double>::infinity()));
      return prefixed("field_ou", joint_continuity_probe(
                                      "joint_continuity",
                                      [&](double t, const std::shared_ptr<const StateGrid>& g) {
                                        return SemigroupOracle(assemble(ou, 8.0, g)).apply(t, cell_indicator(*g, half));
                                      },
                                      std::make_shared<const StateGrid>(StateGrid::interval(-8.0, 8.0, 0.04)), unit,
                                      0.1, 1.0, 9));
    });
  }

  std::vector<CheckReport> reports(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { reports[i] = tasks[i](); });
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return reports;
}

bool suite_passed(std::span<const CheckReport> reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.inconclusive || r.passed; });
}

}  // namespace semilab

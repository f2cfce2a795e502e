// Copyright 2026 The ebsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ebsched/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

std::string subdir(const std::string& base, const std::string& name) {
  return base.empty() ? std::string() : (std::filesystem::path(base) / name).string();
}

std::optional<double> effective_bound(const RawSolution& raw) {
  if (raw.bound) return raw.bound;
  if (raw.status == SolveStatus::kOptimal && raw.has_incumbent) return raw.objective;
  return std::nullopt;
}

}  // namespace

std::map<std::string, double> grid_peaks(const Instance& inst, const Schedule& schedule) {
  const GridLoad load = grid_load_profile(inst, schedule);
  std::map<std::string, double> peaks;
  for (std::size_t g = 0; g < load.grid_points.size(); ++g) peaks[load.grid_points[g]] = load.peak(g);
  return peaks;
}

SolveOutcome run_solve(const Instance& inst, const SolveOptions& opt) {
  SolveOutcome out;
  std::map<std::string, double> caps = opt.grid_cap_override_kw;
  if (opt.grid_cap_fraction) {
    if (*opt.grid_cap_fraction < 0.0) throw InvalidInput("grid cap fraction must be nonnegative");
    SolveOptions ref = opt;
    ref.grid_cap_fraction.reset();
    ref.validate = false;
    ref.solver.work_dir = subdir(opt.solver.work_dir, "reference");
    SolveOutcome reference = run_solve(inst, ref);
    if (!reference.schedule) {
      reference.raw.diagnostics = "reference solve without grid cap failed\n" + reference.raw.diagnostics;
      return reference;
    }
    out.reference_peak_kw = grid_peaks(inst, *reference.schedule);
    for (const auto& [gp, peak] : out.reference_peak_kw) {
      const double cap = *opt.grid_cap_fraction * peak;
      auto it = caps.find(gp);
      caps[gp] = it == caps.end() ? cap : std::min(it->second, cap);
    }
  }

  const ProfileCurves curves(inst, opt.curve);
  out.graph = std::make_unique<SchedulingGraph>(build_graph(inst, opt.theta, opt.graph));
  const ChargingDomains domains =
      build_domains(inst, curves, static_cast<double>(opt.theta), opt.segments, opt.estimator);
  BuildOptions build;
  build.strengthening = opt.strengthening;
  build.grid_caps = opt.grid_caps;
  build.precondition_lead = opt.precondition_lead;
  build.linear_charging = opt.linear_charging;
  build.grid_cap_override_kw = caps;
  out.model = build_model(*out.graph, domains, build);
  out.grid_caps_kw = caps;

  out.raw = solve_external(out.model, opt.solver);
  if (out.raw.has_incumbent && !opt.solver.relax) {
    Schedule s = decode_solution(out.model, out.raw, *out.graph);
    s.segments = opt.segments;
    s.estimator = opt.linear_charging ? "linear" : to_string(opt.estimator);
    s.bound = effective_bound(out.raw);
    if (opt.validate) {
      ValidationOptions v;
      v.curve_options = opt.curve;
      out.report = validate_schedule(inst, s, v);
    }
    out.schedule = std::move(s);
  }
  return out;
}

double relative_gap(double a, double b) {
  const double mean = (a + b) / 2.0;
  if (std::abs(a - b) == 0.0) return 0.0;
  return std::abs(a - b) / std::abs(mean);
}

EstimatorComparison compare_estimators(const Instance& inst, const SolveOptions& options) {
  EstimatorComparison cmp;
  cmp.segments = options.segments;
  cmp.theta = options.theta;
  auto run = [&](EstimatorKind kind, std::string& status, std::optional<double>& objective,
                 std::optional<double>& bound) {
    SolveOptions o = options;
    o.estimator = kind;
    o.validate = false;
    o.solver.work_dir = subdir(options.solver.work_dir, to_string(kind));
    const SolveOutcome r = run_solve(inst, o);
    status = to_string(r.raw.status);
    if (r.raw.has_incumbent) objective = r.raw.objective;
    bound = effective_bound(r.raw);
  };
  run(EstimatorKind::kUnder, cmp.status_under, cmp.objective_under, cmp.bound_under);
  run(EstimatorKind::kOver, cmp.status_over, cmp.objective_over, cmp.bound_over);
  if (cmp.objective_under && cmp.objective_over) cmp.objective_gap = relative_gap(*cmp.objective_over, *cmp.objective_under);
  if (cmp.bound_under && cmp.bound_over) cmp.bound_gap = relative_gap(*cmp.bound_over, *cmp.bound_under);
  return cmp;
}

std::string comparison_to_json(const EstimatorComparison& c) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
  nlohmann::ordered_json doc = {{"segments", c.segments},
                                {"theta", c.theta},
                                {"status_under", c.status_under},
                                {"status_over", c.status_over},
                                {"objective_under", opt(c.objective_under)},
                                {"objective_over", opt(c.objective_over)},
                                {"bound_under", opt(c.bound_under)},
                                {"bound_over", opt(c.bound_over)},
                                {"objective_gap", opt(c.objective_gap)},
                                {"bound_gap", opt(c.bound_gap)}};
  return doc.dump(1) + "\n";
}

}  // namespace ebsched

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

#ifndef EBSCHED_PIPELINE_HPP_
#define EBSCHED_PIPELINE_HPP_

// End-to-end runs: build graph and model, solve, decode, validate; the
// discretization sweep and the estimator comparison built on top.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ebsched/instance.hpp"
#include "ebsched/milp.hpp"
#include "ebsched/netgraph.hpp"
#include "ebsched/schedule.hpp"
#include "ebsched/solver.hpp"
#include "ebsched/validate.hpp"

namespace ebsched {

struct SolveOptions {
  std::int64_t theta = 300;
  int segments = 4;
  EstimatorKind estimator = EstimatorKind::kUnder;
  // Caps every grid point at this fraction of its peak in an uncapped
  // reference solve.
  std::optional<double> grid_cap_fraction;
  // Explicit caps in kW, applied on top of the instance limits.
  std::map<std::string, double> grid_cap_override_kw;
  bool grid_caps = true;
  bool strengthening = false;
  bool linear_charging = false;
  int precondition_lead = 0;
  GraphOptions graph;
  CurveOptions curve;
  SolverConfig solver;
  bool validate = true;
};

struct SolveOutcome {
  std::unique_ptr<SchedulingGraph> graph;
  MilpModel model;
  RawSolution raw;
  std::optional<Schedule> schedule;
  std::optional<ValidationReport> report;  // exact mode
  // Caps in force (kW) and the reference peaks they were derived from.
  std::map<std::string, double> grid_caps_kw;
  std::map<std::string, double> reference_peak_kw;

  bool has_schedule() const { return schedule.has_value(); }
};

SolveOutcome run_solve(const Instance& instance, const SolveOptions& options);

// Peak load per grid point (kW) of a schedule.
std::map<std::string, double> grid_peaks(const Instance& instance, const Schedule& schedule);

struct SweepOptions {
  std::vector<int> segments = {2, 3, 4, 10};
  std::vector<std::int64_t> thetas = {60, 300, 600};
  SolveOptions base;
  int workers = 1;
  // Reference schedule judged under every configuration. When absent and
  // compute_reference is set, a linear-charging model is solved at
  // reference_theta.
  std::optional<Schedule> reference;
  bool compute_reference = true;
  std::int64_t reference_theta = 60;
};

struct SweepRow {
  int segments = 0;
  std::int64_t theta = 0;
  std::string status;
  std::optional<bool> reference_feasible;  // "fs?"
  int courses = 0;                         // "#C"
  std::optional<double> objective;
  std::optional<double> bound;
  std::optional<double> gap;  // (objective - bound) / objective
  double wall_seconds = 0.0;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<Schedule> reference;
  std::string reference_error;
};

SweepResult discretization_sweep(const Instance& instance, const SweepOptions& options);
// m,theta,fs,courses,objective,bound,gap,status,wall_seconds,error
void write_sweep_csv(const SweepResult& result, const std::string& path);
// Geometric mean of the positive gaps of solved rows; nullopt if none.
std::optional<double> geometric_mean_gap(const std::vector<SweepRow>& rows, double floor = 1e-6);

// |a - b| / ((a + b) / 2); 0 when both vanish.
double relative_gap(double a, double b);

struct EstimatorComparison {
  int segments = 0;
  std::int64_t theta = 0;
  std::string status_under;
  std::string status_over;
  std::optional<double> objective_under;
  std::optional<double> objective_over;
  std::optional<double> bound_under;
  std::optional<double> bound_over;
  std::optional<double> objective_gap;
  std::optional<double> bound_gap;
};

EstimatorComparison compare_estimators(const Instance& instance, const SolveOptions& options);
std::string comparison_to_json(const EstimatorComparison& comparison);

}  // namespace ebsched

#endif  // EBSCHED_PIPELINE_HPP_

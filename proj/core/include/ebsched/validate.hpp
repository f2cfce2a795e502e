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

#ifndef EBSCHED_VALIDATE_HPP_
#define EBSCHED_VALIDATE_HPP_

// Schedule validation against the exact charge curve, approximation error
// ledgers, and grid load reports.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebsched/course.hpp"
#include "ebsched/instance.hpp"
#include "ebsched/schedule.hpp"

namespace ebsched {

enum class ValidationMode { kExact, kApproxUnder, kApproxOver };

std::string to_string(ValidationMode mode);
ValidationMode validation_mode_from_string(const std::string& name);

struct ValidationOptions {
  ValidationMode mode = ValidationMode::kExact;
  // Segments of the approximate increment domain; the step is the schedule's theta.
  int segments = 4;
  // Step of the approximate domain when it differs from the schedule's, e.g.
  // to judge a fine-grid schedule under a coarser model.
  std::optional<std::int64_t> approx_theta;
  // Minimum soc kept at every course element in addition to E.
  double soc_floor = 0.0;
  double tolerance = 1e-9;
  CurveOptions curve_options;
  int threads = 1;
};

struct Violation {
  std::string course;
  std::string kind;  // energy, approx-energy, phi-inadmissible, structure
  int element = -1;
  std::string detail;
};

struct CourseReport {
  std::string course;
  std::string vehicle_type;
  bool electric = true;
  CourseTrace trace;
  // Minimum soc needed at each element: max(E, soc_floor).
  std::vector<double> required;
  bool energy_feasible = true;
  bool weakly_feasible = true;
  bool strongly_feasible = true;
  int first_exact_violation = -1;
  int first_approx_violation = -1;
  double max_abs_eps = 0.0;
  // Largest operator gap of the domains used along the course.
  double sup_gap = 0.0;
  bool eps_bound_holds = true;  // |eps_j| <= sigma_j * sup_gap + 1e-6
  bool eps_sign_consistent = true;  // eps <= 0 (under) or >= 0 (over)
};

struct GridLoad {
  std::int64_t theta = 0;
  std::int64_t start = 0;
  std::vector<std::string> grid_points;
  // load[g][i - 1] in kW during step i.
  std::vector<std::vector<double>> load;

  double peak(std::size_t g) const;
  int peak_step(std::size_t g) const;  // 1-based, 0 when all zero
  // Sum over grid points per step.
  std::vector<double> total() const;
  double total_peak() const;
};

struct ValidationReport {
  ValidationMode mode = ValidationMode::kExact;
  std::int64_t theta = 0;
  int segments = 0;
  std::vector<CourseReport> courses;
  int fleet_size = 0;
  double objective = 0.0;  // recomputed
  std::optional<double> reported_objective;
  GridLoad grid;
  std::vector<Violation> violations;

  bool energy_feasible() const;
  bool weakly_feasible() const;
  bool strongly_feasible() const;
};

ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule,
                                   const ValidationOptions& options = {});

// Per grid point, sum over courses of omega * phi per step.
GridLoad grid_load_profile(const Instance& instance, const Schedule& schedule);
// grid_point,step,load
void write_grid_load_csv(const GridLoad& load, const std::string& path);
std::string report_to_json(const ValidationReport& report);
// course,element,role,label,consumption,required,soc_exact,soc_approx,eps,sigma
void write_trace_csv(const ValidationReport& report, const std::string& path);

struct PeakShaveRow {
  double cap_fraction = 0.0;
  double objective = 0.0;
  double normalized_objective = 0.0;
  int fleet_size = 0;
  double peak_kw = 0.0;
  double normalized_peak = 0.0;
  bool cap_respected = true;
  // Steps per bin of total load / reference peak, bins of width 0.1 up to 1.0
  // (last bin collects everything above).
  std::vector<int> histogram;
};

struct PeakShaveReport {
  double reference_peak_kw = 0.0;
  double reference_objective = 0.0;
  std::vector<PeakShaveRow> rows;  // cap fractions in decreasing order
  // Objective does not decrease as the cap tightens.
  bool objective_monotone = true;
  bool peak_monotone = true;
};

// `schedules` must contain the reference cap 1.0.
PeakShaveReport peak_shave_report(const Instance& instance, const std::map<double, Schedule>& schedules,
                                  double tolerance = 1e-6);
void write_peak_shave_csv(const PeakShaveReport& report, const std::string& path);

}  // namespace ebsched

#endif  // EBSCHED_VALIDATE_HPP_

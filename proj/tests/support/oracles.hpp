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

#ifndef EBSCHED_TESTS_SUPPORT_ORACLES_HPP_
#define EBSCHED_TESTS_SUPPORT_ORACLES_HPP_

// Independent reference computations used as expected values in tests.

#include <cstdint>
#include <functional>
#include <vector>

#include "ebsched/chargemodel.hpp"
#include "ebsched/instance.hpp"
#include "ebsched/milp.hpp"
#include "ebsched/netgraph.hpp"

namespace ebsched::oracle {

// Analytic solutions of zeta' = f(zeta) for the built-in profile shapes:
//   constant:  zeta = c t
//   linear:    zeta = 1 - (1 - yV) exp(-k (t - tV)),  k = cc / (1 - yV)
//   quadratic: zeta = yV + (1 - yV) tanh(k (t - tV))
struct ClosedFormCurve {
  CvShape shape = CvShape::kQuadratic;
  double cc = 1.0 / 1800.0;
  double yv = 0.8;
  double cap = 1.0 - 1e-6;

  double t_v() const;
  double soc_at(double t) const;  // unclamped
  double time_at(double y) const;
  // Same conventions as the library: result clamped at cap, negative soc
  // looked up at 0, soc above cap gains nothing.
  double increment(double y, double t) const;
};

// Second derivative of the CV rate for the closed-form shapes.
double cv_second_derivative(CvShape shape, double cc, double yv);

using IncrementFn = std::function<double(const Charger& charger, double soc, double window)>;

struct FleetResult {
  bool feasible = false;
  int fleet = 0;
  std::vector<std::vector<int>> courses;  // trip indices per course
};

// Minimum number of courses over all partitions of the trips. A course is
// feasible when soc never drops below 0; between two trips a vehicle either
// deadheads directly or visits one charger, charging over the longest
// admissible window. Slot capacities are ignored, so the result is a lower
// bound on the fleet of any capacity-respecting schedule.
FleetResult min_fleet(const Instance& instance, const IncrementFn& increment, int max_trips = 9);

// Exhaustive path enumeration counterparts of EnergyBounds.
double min_exit_by_enumeration(const SchedulingGraph& graph, int node, int plan_type);
double max_arrival_by_enumeration(const SchedulingGraph& graph, int node, int plan_type);

// Random DAG with trip-like inner nodes, anchors of every kind and random
// per-type consumptions; nodes are numbered in topological order.
SchedulingGraph random_dag(std::uint64_t seed, int nodes, int plan_types);

double row_activity(const Row& row, const std::vector<double>& values);

}  // namespace ebsched::oracle

#endif  // EBSCHED_TESTS_SUPPORT_ORACLES_HPP_

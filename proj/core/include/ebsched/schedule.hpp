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

#ifndef EBSCHED_SCHEDULE_HPP_
#define EBSCHED_SCHEDULE_HPP_

// Vehicle schedules: courses of trips, recharge events and depot parking,
// decoded from a solved model or loaded from file.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebsched/instance.hpp"
#include "ebsched/milp.hpp"
#include "ebsched/netgraph.hpp"
#include "ebsched/solver.hpp"

namespace ebsched {

// Occupation of one charger slot from step `first_step` to
// `first_step + phi.size()`; phi[i] is the soc gained during step
// first_step + i + 1.
struct ChargeEvent {
  std::string charger;
  int slot = 0;
  int first_step = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::vector<double> phi;

  double total() const;
  bool operator==(const ChargeEvent&) const = default;
};

struct ParkEvent {
  std::string depot;
  std::int64_t start = 0;
  std::int64_t end = 0;

  bool operator==(const ParkEvent&) const = default;
};

struct CourseItem {
  enum class Kind { kTrip, kCharge, kPark };
  Kind kind = Kind::kTrip;
  std::string trip;    // kTrip
  ChargeEvent charge;  // kCharge
  ParkEvent park;      // kPark

  bool operator==(const CourseItem&) const = default;
};

struct Course {
  std::string id;
  std::string vehicle_type;
  std::string depot;
  std::vector<CourseItem> items;

  std::size_t charge_events() const;
  bool operator==(const Course&) const = default;
};

struct Schedule {
  std::string instance;
  std::int64_t theta = 0;
  int segments = 0;
  std::string estimator;
  std::string status;
  std::optional<double> objective;  // as reported by the solver
  std::optional<double> bound;
  std::vector<Course> courses;

  bool operator==(const Schedule&) const = default;
};

std::string dump_schedule(const Schedule& schedule);
Schedule parse_schedule(const std::string& text);
void save_schedule(const Schedule& schedule, const std::string& path);
Schedule load_schedule(const std::string& path);
// course,charger,slot,step,time,phi
void write_phi_csv(const Schedule& schedule, const std::string& path);

// Objective recomputed from instance data: fixed cost per course, deadhead
// distance cost, and energy price times recharged kWh.
double schedule_cost(const Instance& instance, const Schedule& schedule);

// Checks that every referenced trip, charger, depot and vehicle type exists
// and that trips are covered at most once. Throws StructureError.
void check_schedule_structure(const Instance& instance, const Schedule& schedule);

inline constexpr double kIntegralityTolerance = 1e-5;

// Flow decomposition of the x = 1 arcs into depot-to-depot courses.
// Throws DecodeError on fractional x, flow imbalance or uncovered trips.
Schedule decode_solution(const MilpModel& model, const RawSolution& raw, const SchedulingGraph& graph);

}  // namespace ebsched

#endif  // EBSCHED_SCHEDULE_HPP_

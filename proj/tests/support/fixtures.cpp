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

#include "fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>

namespace ebsched::fixtures {

Instance two_trip_instance(double trip_consumption) {
  Instance inst;
  inst.name = "two-trip";
  inst.horizon = {0, 14400};
  inst.vehicle_types.push_back({"E", true, 100.0, 1.0, 100.0});
  inst.depots.push_back({"D", std::nullopt, {}});
  inst.profiles.push_back({"p", ChargingPowerProfile::Quadratic(1.0 / 1800.0, 0.8)});
  inst.grid_points.push_back({"g1", std::nullopt, {}, 0.2, {}});
  inst.chargers.push_back({"c1", "Y", 1, "g1", {{"E", "p"}}, {}, 0.0});
  inst.trips.push_back({"t1", "X", "Y", 3600, 5400, {{"E", trip_consumption}}});
  inst.trips.push_back({"t2", "Y", "X", 7200, 9000, {{"E", trip_consumption}}});
  for (const auto& [a, b] : {std::pair{"D", "X"}, {"X", "D"}, {"D", "Y"}, {"Y", "D"}, {"X", "Y"}, {"Y", "X"}}) {
    inst.deadheads.push_back({a, b, 600, 5.0, {{"E", 0.05}}});
  }
  return inst;
}

namespace {

int arc_id(const SchedulingGraph& g, ArcKind kind, const std::string& tail, const std::string& head) {
  for (const auto& a : g.arcs) {
    if (a.kind == kind && g.nodes[static_cast<std::size_t>(a.tail)].label == tail &&
        g.nodes[static_cast<std::size_t>(a.head)].label == head) {
      return a.id;
    }
  }
  throw std::logic_error("fixture arc " + tail + " -> " + head + " missing");
}

}  // namespace

std::vector<double> one_vehicle_values(const MilpModel& m, const ChargingDomains& domains, bool charge) {
  const auto& g = *m.graph;
  const auto* dom = domains.find(0, "E");
  std::vector<double> v(m.variables.size(), 0.0);
  auto use = [&](int a, double y) {
    v[static_cast<std::size_t>(m.x[static_cast<std::size_t>(a)][0])] = 1.0;
    v[static_cast<std::size_t>(m.y[static_cast<std::size_t>(a)])] = y;
  };
  const double e = g.instance->trips[0].consumption.at("E");
  const double leg = g.instance->deadhead("D", "X")->consumption.at("E");
  double y = 1.0;
  use(arc_id(g, ArcKind::kPullOut, "D^s", "t1"), y);
  y -= leg + e;
  use(arc_id(g, ArcKind::kAccess, "t1", "c1/0_18"), y);
  for (int i = 19; i <= 24; ++i) {
    const int a = g.timelines[0].arcs[static_cast<std::size_t>(i - 1)];
    use(a, y);
    const double phi = charge ? dom->max_increment(y) : 0.0;
    v[static_cast<std::size_t>(m.phi[static_cast<std::size_t>(a)][0])] = phi;
    y += phi;
  }
  use(arc_id(g, ArcKind::kEgress, "c1/0_24", "t2"), y);
  y -= e;
  use(arc_id(g, ArcKind::kPullIn, "t2", "D^e"), y);
  return v;
}

RawSolution as_raw_solution(const MilpModel& m, const std::vector<double>& values) {
  RawSolution raw;
  raw.status = SolveStatus::kOptimal;
  raw.has_incumbent = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    raw.values[m.variables[i].name] = values[i];
    raw.objective += m.variables[i].objective * values[i];
  }
  raw.bound = raw.objective;
  return raw;
}

std::string solver_script() { return EBSCHED_TEST_SOLVER_SCRIPT; }

std::string solver_command(double mip_gap) {
  char gap[32];
  std::snprintf(gap, sizeof gap, "%g", mip_gap);
  return "python3 '" + solver_script() +
         "' {model} {solution} --time-limit {timelimit} --threads {threads} --quiet --mip-gap " + gap;
}

bool solver_available() {
  static const bool available = std::system("python3 -c 'import highspy' >/dev/null 2>&1") == 0;
  return available;
}

SolverConfig solver_config(double time_limit) {
  SolverConfig c;
  c.command = solver_command();
  c.time_limit = time_limit;
  c.keep_files = false;
  return c;
}

std::string temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("ebsched-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace ebsched::fixtures

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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ebsched/error.hpp"
#include "ebsched/schedule.hpp"
#include "fixtures.hpp"

namespace ebsched {
namespace {

struct Decoded {
  Instance inst = fixtures::two_trip_instance(0.48);
  SchedulingGraph graph = build_graph(inst, 300);
  ProfileCurves curves{inst};
  ChargingDomains domains = build_domains(inst, curves, 300.0, 4, EstimatorKind::kUnder);
  MilpModel model = build_model(graph, domains);
  std::vector<double> values = fixtures::one_vehicle_values(model, domains);
  RawSolution raw = fixtures::as_raw_solution(model, values);
};

TEST(Decode, OneVehicleCourse) {
  Decoded d;
  const auto s = decode_solution(d.model, d.raw, d.graph);
  ASSERT_EQ(s.courses.size(), 1u);
  const auto& c = s.courses[0];
  EXPECT_EQ(c.id, "bus001");
  EXPECT_EQ(c.vehicle_type, "E");
  EXPECT_EQ(c.depot, "D");
  ASSERT_EQ(c.items.size(), 3u);
  EXPECT_EQ(c.items[0].trip, "t1");
  EXPECT_EQ(c.items[2].trip, "t2");
  ASSERT_EQ(c.items[1].kind, CourseItem::Kind::kCharge);
  const auto& e = c.items[1].charge;
  EXPECT_EQ(e.charger, "c1");
  EXPECT_EQ(e.first_step, 18);
  EXPECT_EQ(e.start, 5400);
  EXPECT_EQ(e.end, 7200);
  ASSERT_EQ(e.phi.size(), 6u);
  const auto* dom = d.domains.find(0, "E");
  EXPECT_NEAR(e.phi[0], dom->max_increment(0.47), 1e-12);
  EXPECT_EQ(c.charge_events(), 1u);
  EXPECT_EQ(s.status, "optimal");
  EXPECT_NEAR(*s.objective, d.raw.objective, 1e-12);
}

TEST(Decode, RecomputedCostMatchesModelObjective) {
  Decoded d;
  const auto s = decode_solution(d.model, d.raw, d.graph);
  EXPECT_NEAR(schedule_cost(d.inst, s), d.raw.objective, 1e-9);
}

TEST(Decode, RejectsBrokenSolutions) {
  Decoded d;
  auto frac = d.raw;
  frac.values[d.model.variables[static_cast<std::size_t>(d.model.x[0][0])].name] = 0.5;
  EXPECT_THROW(decode_solution(d.model, frac, d.graph), DecodeError);

  auto none = d.raw;
  none.has_incumbent = false;
  EXPECT_THROW(decode_solution(d.model, none, d.graph), DecodeError);

  // Drop the pull-in arc: flow no longer balances at t2.
  auto cut = d.raw;
  for (const auto& a : d.graph.arcs) {
    if (a.kind == ArcKind::kPullIn && cut.value(x_name(a.id, 0)) > 0.5) cut.values[x_name(a.id, 0)] = 0.0;
  }
  try {
    decode_solution(d.model, cut, d.graph);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_NE(std::string(e.what()).find("flow imbalance"), std::string::npos);
  }
}

TEST(ScheduleIo, JsonRoundTrip) {
  Decoded d;
  const auto s = decode_solution(d.model, d.raw, d.graph);
  EXPECT_EQ(parse_schedule(dump_schedule(s)), s);
  const auto dir = fixtures::temp_dir("sched");
  save_schedule(s, dir + "/s.json");
  EXPECT_EQ(load_schedule(dir + "/s.json"), s);
  write_phi_csv(s, dir + "/phi.csv");
  std::ifstream in(dir + "/phi.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "course,charger,slot,step,time,phi");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 6);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(parse_schedule("[1,2"), InvalidInput);
}

TEST(ScheduleStructure, UnknownIdsAndDoubleCover) {
  Decoded d;
  auto s = decode_solution(d.model, d.raw, d.graph);
  auto bad = s;
  bad.courses[0].items[0].trip = "t9";
  EXPECT_THROW(check_schedule_structure(d.inst, bad), StructureError);
  bad = s;
  bad.courses[0].items[1].charge.charger = "c9";
  EXPECT_THROW(check_schedule_structure(d.inst, bad), StructureError);
  bad = s;
  bad.courses.push_back(s.courses[0]);
  bad.courses[1].id = "bus002";
  EXPECT_THROW(check_schedule_structure(d.inst, bad), StructureError);
  EXPECT_NO_THROW(check_schedule_structure(d.inst, s));
}

}  // namespace
}  // namespace ebsched

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

#include <algorithm>
#include <cmath>

#include "ebsched/error.hpp"
#include "ebsched/milp.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace ebsched {
namespace {

struct Fixture {
  Instance inst;
  SchedulingGraph graph;
  ProfileCurves curves;
  ChargingDomains domains;

  explicit Fixture(double trip_consumption, int segments = 4)
      : inst(fixtures::two_trip_instance(trip_consumption)),
        graph(build_graph(inst, 300)),
        curves(inst),
        domains(build_domains(inst, curves, 300.0, segments, EstimatorKind::kUnder)) {}
};

std::vector<double> hand_solution(const Fixture& s, const MilpModel& m, bool charge) {
  return fixtures::one_vehicle_values(m, s.domains, charge);
}

std::vector<std::string> violated_rows(const MilpModel& m, const std::vector<double>& v) {
  std::vector<std::string> out;
  for (const auto& r : m.rows) {
    const double lhs = oracle::row_activity(r, v);
    const bool ok = r.sense == RowSense::kEq   ? std::abs(lhs - r.rhs) <= 1e-9
                    : r.sense == RowSense::kLe ? lhs <= r.rhs + 1e-9
                                               : lhs >= r.rhs - 1e-9;
    if (!ok) out.push_back(r.name);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < m.variables[i].lower - 1e-9 || v[i] > m.variables[i].upper + 1e-9) out.push_back(m.variables[i].name);
  }
  return out;
}

TEST(Model, Names) {
  EXPECT_EQ(x_name(12, 3), "x_000012_03");
  EXPECT_EQ(y_name(12), "y_000012");
  EXPECT_EQ(phi_name(7, 0), "phi_000007_00");
}

TEST(Model, VariableAndRowCounts) {
  Fixture s(0.48);
  const auto m = build_model(s.graph, s.domains);
  const std::size_t arcs = s.graph.arcs.size();
  EXPECT_EQ(m.variables.size(), 2 * arcs + 48);  // x and y per arc, phi per recharge arc
  EXPECT_EQ(m.count(RowKind::kTripCover), 2);
  EXPECT_EQ(m.count(RowKind::kPullOut), 2);
  EXPECT_EQ(m.count(RowKind::kIncrementCoupling), 48);
  const int segments = static_cast<int>(s.domains.find(0, "E")->segments().size());
  EXPECT_EQ(m.count(RowKind::kIncrementDomain), 48 * (segments - 1));
  EXPECT_EQ(m.count(RowKind::kGridCapacity), 0);
  EXPECT_EQ(m.rows.front().name.substr(0, 5), "flow_");
}

TEST(Model, HandSolutionSatisfiesEveryRow) {
  Fixture s(0.48);
  const auto m = build_model(s.graph, s.domains);
  const auto v = hand_solution(s, m, true);
  EXPECT_TRUE(violated_rows(m, v).empty()) << ::testing::PrintToString(violated_rows(m, v));

  double objective = 0.0, charged = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) objective += m.variables[i].objective * v[i];
  for (std::size_t a = 0; a < m.phi.size(); ++a) {
    for (int p : m.phi[a]) charged += p >= 0 ? v[static_cast<std::size_t>(p)] : 0.0;
  }
  // Fixed cost, two 5 km legs at 1 per km, energy at 0.2 per kWh of a 100 kWh battery.
  EXPECT_NEAR(objective, 100.0 + 10.0 + 0.2 * 100.0 * charged, 1e-9);
}

TEST(Model, SkippingTheChargeDrivesSocNegative) {
  Fixture s(0.48);
  const auto m = build_model(s.graph, s.domains);
  const auto v = hand_solution(s, m, false);
  const auto bad = violated_rows(m, v);
  ASSERT_FALSE(bad.empty());
  for (const auto& name : bad) {
    EXPECT_TRUE(name.rfind("y_", 0) == 0 || name.rfind("pullin_", 0) == 0) << name;
  }
}

TEST(Model, StrengthenedRowsKeepTheHandSolution) {
  Fixture s(0.48);
  BuildOptions o;
  o.strengthening = true;
  const auto m = build_model(s.graph, s.domains, o);
  EXPECT_GT(m.count(RowKind::kStrengthenedLower), 0);
  EXPECT_EQ(m.count(RowKind::kSocCoupling), 0);
  EXPECT_TRUE(violated_rows(m, hand_solution(s, m, true)).empty());
  for (const auto& r : m.rows) {
    for (const auto& [_, c] : r.terms) EXPECT_LE(c, 2.0);
  }
}

TEST(Model, LinearChargingDropsDomainRows) {
  Fixture s(0.3);
  BuildOptions o;
  o.linear_charging = true;
  const auto m = build_model(s.graph, s.domains, o);
  EXPECT_EQ(m.count(RowKind::kIncrementDomain), 0);
  EXPECT_EQ(m.count(RowKind::kIncrementCoupling), 48);
}

TEST(Model, GridRowsUseTheSmallerLimit) {
  auto inst = fixtures::two_trip_instance();
  inst.grid_points[0].max_kw = 500.0;
  inst.grid_points[0].power_windows = {{6000, 6600, 50.0}};
  const auto g = build_graph(inst, 300);
  ProfileCurves curves(inst);
  const auto d = build_domains(inst, curves, 300.0, 4, EstimatorKind::kUnder);
  BuildOptions o;
  o.grid_cap_override_kw = {{"g1", 200.0}};
  const auto m = build_model(g, d, o);
  EXPECT_EQ(m.count(RowKind::kGridCapacity), 48);
  for (const auto& r : m.rows) {
    if (r.kind != RowKind::kGridCapacity) continue;
    EXPECT_EQ(r.rhs, (r.step == 21 || r.step == 22) ? 50.0 : 200.0) << r.step;
  }
  o.grid_caps = false;
  EXPECT_EQ(build_model(g, d, o).count(RowKind::kGridCapacity), 0);
}

TEST(Model, UnavailableStepsFixPhiToZero) {
  auto inst = fixtures::two_trip_instance();
  inst.chargers[0].availability = {{5400, 7200}};
  const auto g = build_graph(inst, 300);
  ProfileCurves curves(inst);
  const auto m = build_model(g, build_domains(inst, curves, 300.0, 4, EstimatorKind::kUnder));
  for (const auto& a : g.arcs) {
    if (a.kind != ArcKind::kRecharge) continue;
    const auto& var = m.variables[static_cast<std::size_t>(m.phi[static_cast<std::size_t>(a.id)][0])];
    EXPECT_EQ(var.upper == 0.0, !a.available);
  }
}

TEST(Model, Preconditioning) {
  Fixture s(0.3);
  auto m = build_model(s.graph, s.domains);
  EXPECT_EQ(add_preconditioning(m, 2), 46);
  EXPECT_EQ(m.count(RowKind::kPrecondition), 46);
  EXPECT_THROW(add_preconditioning(m, 0), InvalidInput);
}

TEST(Model, DomainStepMustMatchGraph) {
  Fixture s(0.3);
  const auto wrong = build_domains(s.inst, s.curves, 600.0, 4, EstimatorKind::kUnder);
  EXPECT_THROW(build_model(s.graph, wrong), BuildError);
  EXPECT_THROW(build_model(s.graph, ChargingDomains{}), BuildError);
}

TEST(ModelIo, EmissionIsDeterministic) {
  Fixture a(0.48);
  Fixture b(0.48);
  const auto ma = build_model(a.graph, a.domains);
  const auto mb = build_model(b.graph, b.domains);
  for (auto f : {ModelFormat::kLp, ModelFormat::kMps}) {
    EXPECT_EQ(emit_model_string(ma, f), emit_model_string(mb, f));
  }
  const auto lp = emit_model_string(ma, ModelFormat::kLp);
  EXPECT_NE(lp.find("Minimize"), std::string::npos);
  EXPECT_NE(lp.find("Binaries"), std::string::npos);
  EXPECT_EQ(emit_model_string(ma, ModelFormat::kLp, true).find("Binaries"), std::string::npos);
  const auto mps = emit_model_string(ma, ModelFormat::kMps);
  EXPECT_NE(mps.find("'INTORG'"), std::string::npos);
  EXPECT_EQ(mps.substr(mps.size() - 7), "ENDATA\n");
}

TEST(ModelIo, FormatFromPath) {
  EXPECT_EQ(model_format_from_path("a/b.lp"), ModelFormat::kLp);
  EXPECT_EQ(model_format_from_path("b.mps"), ModelFormat::kMps);
  EXPECT_THROW(model_format_from_path("b.txt"), InvalidInput);
}

}  // namespace
}  // namespace ebsched

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

#include <cmath>
#include <filesystem>

#include "ebsched/pipeline.hpp"
#include "fixtures.hpp"

namespace ebsched {
namespace {

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!fixtures::solver_available()) GTEST_SKIP() << "highspy not importable";
    unsetenv(kSolverCommandEnv);
    dir_ = fixtures::temp_dir("pipeline");
    options_.solver = fixtures::solver_config(60.0);
    options_.solver.work_dir = dir_;
  }
  void TearDown() override {
    if (!dir_.empty()) std::filesystem::remove_all(dir_);
  }

  std::string dir_;
  SolveOptions options_;
};

TEST_F(PipelineTest, TwoTripsShareOneChargingVehicle) {
  const auto inst = fixtures::two_trip_instance(0.48);
  const auto out = run_solve(inst, options_);
  EXPECT_EQ(out.raw.status, SolveStatus::kOptimal);
  ASSERT_TRUE(out.has_schedule());
  EXPECT_EQ(out.schedule->courses.size(), 1u);
  ASSERT_TRUE(out.report);
  EXPECT_TRUE(out.report->energy_feasible());
  EXPECT_NEAR(out.report->objective, out.raw.objective, 1e-5 * std::abs(out.raw.objective));
}

TEST_F(PipelineTest, ZeroGridCapForcesTwoVehicles) {
  const auto inst = fixtures::two_trip_instance(0.48);
  options_.grid_cap_override_kw = {{"g1", 0.0}};
  const auto out = run_solve(inst, options_);
  ASSERT_TRUE(out.has_schedule());
  EXPECT_EQ(out.schedule->courses.size(), 2u);
  EXPECT_NEAR(out.raw.objective, 2 * 110.0, 1e-6);
}

TEST_F(PipelineTest, UnservableTripIsInfeasible) {
  auto inst = fixtures::two_trip_instance(0.48);
  inst.trips[0].consumption["E"] = 0.99;
  options_.graph.allow_unreachable_trips = true;
  const auto out = run_solve(inst, options_);
  EXPECT_EQ(out.raw.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(out.has_schedule());
}

TEST_F(PipelineTest, EstimatorsAgreeOnTheFixture) {
  const auto inst = fixtures::two_trip_instance(0.48);
  const auto cmp = compare_estimators(inst, options_);
  ASSERT_TRUE(cmp.objective_under && cmp.objective_over);
  EXPECT_LE(*cmp.objective_over, *cmp.objective_under + 1e-6);
}

TEST_F(PipelineTest, SmallSweep) {
  const auto inst = fixtures::two_trip_instance(0.48);
  SweepOptions o;
  o.base = options_;
  o.segments = {2, 4};
  o.thetas = {300, 600};
  o.reference_theta = 300;
  o.workers = 2;
  const auto r = discretization_sweep(inst, o);
  ASSERT_EQ(r.rows.size(), 4u);
  ASSERT_TRUE(r.reference);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.error.empty()) << row.error;
    EXPECT_EQ(row.courses, 1);
    ASSERT_TRUE(row.gap);
    EXPECT_LE(*row.gap, 1e-6);
  }
}

TEST(Gaps, RelativeAndGeometricMean) {
  EXPECT_DOUBLE_EQ(relative_gap(99.0, 101.0), 0.02);
  EXPECT_EQ(relative_gap(0.0, 0.0), 0.0);
  std::vector<SweepRow> rows(2);
  rows[0].gap = 0.01;
  rows[1].gap = 0.04;
  EXPECT_NEAR(*geometric_mean_gap(rows), 0.02, 1e-12);
  EXPECT_FALSE(geometric_mean_gap({}).has_value());
}

}  // namespace
}  // namespace ebsched

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

#include <random>

#include "ebsched/course.hpp"
#include "ebsched/error.hpp"

namespace ebsched {
namespace {

constexpr double kRate = 1.0 / 1800.0;

CourseTrace one_charge_course(double window) {
  CourseTrace t;
  t.add(CourseRole::kDepotStart, "d", 0.0);
  t.add(CourseRole::kTripStart, "t1", 0.1);
  t.add(CourseRole::kTripEnd, "t1", 0.3);
  t.add(CourseRole::kChargeArrival, "c", 0.05);
  t.add(CourseRole::kChargeDeparture, "c", 0.0);
  t.charge_windows.push_back(window);
  t.add(CourseRole::kTripStart, "t2", 0.05);
  t.add(CourseRole::kTripEnd, "t2", 0.3);
  t.add(CourseRole::kDepotEnd, "d", 0.05);
  return t;
}

TEST(Course, ExactTraceByHand) {
  const auto curve = solve_max_power_curve(ChargingPowerProfile::Constant(kRate));
  auto t = one_charge_course(600.0);
  propagate_course(t, curve);
  const std::vector<double> expected{1.0, 0.9, 0.6, 0.55, 0.55 + 1.0 / 3.0, 0.5 + 1.0 / 3.0,
                                     0.2 + 1.0 / 3.0, 0.15 + 1.0 / 3.0};
  ASSERT_EQ(t.soc_exact.size(), expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j) EXPECT_NEAR(t.soc_exact[j], expected[j], 1e-12) << j;
  EXPECT_EQ(t.sigma.back(), 1);
  EXPECT_EQ(t.sigma[3], 0);
  for (double e : t.eps) EXPECT_EQ(e, 0.0);
}

TEST(Course, NegativeSocIsRecorded) {
  const auto curve = solve_max_power_curve(ChargingPowerProfile::Constant(kRate));
  auto t = one_charge_course(0.0);
  propagate_course(t, curve);
  EXPECT_NEAR(t.soc_exact.back(), 0.15, 1e-12);
  t.consumptions[2] = 1.2;
  propagate_course(t, curve);
  EXPECT_LT(t.soc_exact[2], 0.0);
}

TEST(Course, DomainIncrementStepsFloor) {
  const auto curve = solve_max_power_curve(ChargingPowerProfile::Quadratic(kRate, 0.8));
  const auto dom = build_underestimator(curve, 300.0, 4);
  DomainIncrement op(dom);
  EXPECT_EQ(op.increment(0.2, 299.0), 0.0);
  EXPECT_NEAR(op.increment(0.2, 300.0), dom.max_increment(0.2), 1e-15);
  const double y1 = 0.2 + dom.max_increment(0.2);
  EXPECT_NEAR(op.increment(0.2, 600.0), y1 + dom.max_increment(y1) - 0.2, 1e-15);
}

TEST(Course, UnderestimatorErrorIsNonPositive) {
  const auto curve = solve_max_power_curve(ChargingPowerProfile::Quadratic(kRate, 0.8));
  const auto dom = build_underestimator(curve, 300.0, 3);
  DomainIncrement op(dom);
  auto t = one_charge_course(1800.0);
  propagate_course(t, curve, &op);
  for (std::size_t j = 0; j < t.eps.size(); ++j) EXPECT_LE(t.eps[j], 1e-12);
  EXPECT_LT(t.eps.back(), 0.0);
}

TEST(Course, RejectsMalformedTraces) {
  const auto curve = solve_max_power_curve(ChargingPowerProfile::Constant(kRate));
  CourseTrace empty;
  EXPECT_THROW(propagate_course(empty, curve), InvalidInput);
  auto t = one_charge_course(600.0);
  t.charge_windows.clear();
  EXPECT_THROW(propagate_course(t, curve), InvalidInput);
  CourseTrace bad;
  bad.add(CourseRole::kTripStart, "t", 0.0);
  EXPECT_THROW(propagate_course(bad, curve), InvalidInput);
  auto two = one_charge_course(600.0);
  ExactIncrement ex(curve);
  EXPECT_THROW(propagate_course(two, {&ex, &ex}, {}), InvalidInput);
}

TEST(Course, PerEventOperators) {
  const auto slow = solve_max_power_curve(ChargingPowerProfile::Constant(kRate / 2));
  const auto fast = solve_max_power_curve(ChargingPowerProfile::Constant(kRate));
  ExactIncrement s(slow), f(fast);
  CourseTrace t;
  t.add(CourseRole::kDepotStart, "d", 0.0);
  t.add(CourseRole::kChargeArrival, "c1", 0.5);
  t.add(CourseRole::kChargeDeparture, "c1", 0.0);
  t.add(CourseRole::kChargeArrival, "c2", 0.1);
  t.add(CourseRole::kChargeDeparture, "c2", 0.0);
  t.add(CourseRole::kDepotEnd, "d", 0.1);
  t.charge_windows = {360.0, 360.0};
  propagate_course(t, {&s, &f}, {});
  EXPECT_NEAR(t.soc_exact[2], 0.6, 1e-12);
  EXPECT_NEAR(t.soc_exact[4], 0.7, 1e-12);
  EXPECT_EQ(t.sigma[5], 2);
}

}  // namespace
}  // namespace ebsched

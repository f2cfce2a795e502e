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

#ifndef EBSCHED_GENERATORS_HPP_
#define EBSCHED_GENERATORS_HPP_

#include <cstdint>
#include <string>

#include "ebsched/chargemodel.hpp"
#include "ebsched/instance.hpp"

namespace ebsched {

// Adversarial chain instance: trips tau_1..tau_n, stations s_1..s_{n-1}
// (one single-slot charger each) and depots d_1..d_{n-1}. d_1 serves tau_1
// and tau_n, d_i serves tau_i. The only multi-trip course is
// d_1, tau_1, s_1, tau_2, ..., s_{n-1}, tau_n, d_1.
//
// Underestimation variant: the exact curve arrives at every station and at
// the final depot with soc delta, so any charging error below -delta breaks
// the chain and forces n vehicles.
// Overestimation variant: the exact chain arrives at s_2 (or the depot) with
// soc -delta/2, while an operator overestimating by at least delta keeps it
// feasible.
struct WorstCaseParams {
  int n = 3;
  double delta = 0.002;
  double epsilon_target = 0.005;
  bool overestimation = false;
  double cc_rate = 1.0 / 1800.0;
  double cv_break = 0.8;
  CvShape cv_shape = CvShape::kQuadratic;
  // Step all times and windows are aligned to.
  std::int64_t align = 600;
  double leg_consumption = 0.05;
  double battery_kwh = 300.0;
  CurveOptions curve_options{};
};

Instance generate_worst_case(const WorstCaseParams& params);

struct SyntheticParams {
  int trips = 20;
  int electric_types = 1;
  int non_electric_types = 0;
  int depots = 1;
  int chargers = 1;
  int charge_slots = 2;
  int grid_points = 1;
  int terminals = 0;  // 0 picks max(3, trips / 5)
  std::uint64_t seed = 1;
  std::int64_t horizon = 86400;
  double area_km = 20.0;
  double battery_kwh = 120.0;
  double kwh_per_km = 1.2;
  double speed_kmh = 25.0;
  double cc_rate = 1.0 / 1800.0;
  double cv_break = 0.8;
  std::optional<double> grid_max_kw;

  // Shape of one row of the reference instance table (A..P), with the trip
  // count optionally overridden.
  static SyntheticParams preset(const std::string& row);
};

// Deterministic for a fixed seed; every trip can be served by its own
// vehicle from some depot without charging.
Instance generate_synthetic(const SyntheticParams& params);

}  // namespace ebsched

#endif  // EBSCHED_GENERATORS_HPP_

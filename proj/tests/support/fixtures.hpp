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

#ifndef EBSCHED_TESTS_SUPPORT_FIXTURES_HPP_
#define EBSCHED_TESTS_SUPPORT_FIXTURES_HPP_

#include <string>

#include "ebsched/instance.hpp"
#include "ebsched/milp.hpp"
#include "ebsched/solver.hpp"

namespace ebsched::fixtures {

// One depot D, one electric type E (100 kWh, fixed cost 100, 1 per km),
// terminals X and Y, trips t1 X->Y and t2 Y->X, one single-slot charger at Y.
// Every leg lasts 600 s, is 5 km long and uses 0.05 soc.
Instance two_trip_instance(double trip_consumption = 0.3);

// Path of the HiGHS wrapper script in the source tree.
// Values for the single-vehicle plan D, t1, c1 (steps 19..24), t2, D of the
// two-trip fixture at theta 300. Charging follows the domain's maximal
// increment; `charge` false leaves phi at zero.
std::vector<double> one_vehicle_values(const MilpModel& model, const ChargingDomains& domains, bool charge = true);
RawSolution as_raw_solution(const MilpModel& model, const std::vector<double>& values);

std::string solver_script();
std::string solver_command(double mip_gap = 1e-9);
bool solver_available();
SolverConfig solver_config(double time_limit = 120.0);

// Fresh empty directory below the system temp directory.
std::string temp_dir(const std::string& tag);

}  // namespace ebsched::fixtures

#endif  // EBSCHED_TESTS_SUPPORT_FIXTURES_HPP_

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

#ifndef EBSCHED_INSTANCE_HPP_
#define EBSCHED_INSTANCE_HPP_

// Electric bus scheduling instances. Times are integer seconds, energy
// quantities are relative soc unless the name says kWh.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebsched/chargemodel.hpp"

namespace ebsched {

inline constexpr int kInstanceSchemaVersion = 1;

struct VehicleType {
  std::string id;
  bool electric = true;
  double battery_kwh = 0.0;
  double cost_per_km = 0.0;
  double fixed_cost = 0.0;  // charged once per vehicle leaving a depot

  bool operator==(const VehicleType&) const = default;
};

struct Depot {
  std::string id;
  std::optional<int> capacity;
  // Vehicle types stationed here; empty means all types.
  std::vector<std::string> vehicle_types;

  bool operator==(const Depot&) const = default;
};

struct Trip {
  std::string id;
  std::string start_location;
  std::string end_location;
  std::int64_t departure = 0;
  std::int64_t arrival = 0;
  // Per vehicle type. A type without an entry cannot serve the trip.
  std::map<std::string, double> consumption;

  bool operator==(const Trip&) const = default;
};

struct Deadhead {
  std::string from;
  std::string to;
  std::int64_t duration = 0;
  double distance_km = 0.0;
  std::map<std::string, double> consumption;

  bool operator==(const Deadhead&) const = default;
};

struct TimeWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;

  bool operator==(const TimeWindow&) const = default;
};

struct NamedProfile {
  std::string id;
  ChargingPowerProfile profile;

  bool operator==(const NamedProfile&) const = default;
};

struct Charger {
  std::string id;
  std::string location;
  int slots = 1;
  std::string grid_point;
  // vehicle type id -> profile id. Types without an entry cannot charge here.
  std::map<std::string, std::string> profiles;
  // Empty means always available.
  std::vector<TimeWindow> availability;
  // Consumption along a recharge arc, usually zero.
  double arc_consumption = 0.0;

  bool operator==(const Charger&) const = default;
};

struct PowerWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;
  double max_kw = 0.0;

  bool operator==(const PowerWindow&) const = default;
};

struct PriceWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;
  double price_per_kwh = 0.0;

  bool operator==(const PriceWindow&) const = default;
};

struct GridPoint {
  std::string id;
  // Base limit; nullopt means unlimited.
  std::optional<double> max_kw;
  // Windows override the base limit where they apply.
  std::vector<PowerWindow> power_windows;
  double price_per_kwh = 0.0;
  std::vector<PriceWindow> price_windows;

  // Limit at a time instant (+inf when unlimited).
  double limit_at(std::int64_t t) const;
  // Smallest limit over [t0, t1); conservative for steps straddling windows.
  double step_limit(std::int64_t t0, std::int64_t t1) const;
  double price_at(std::int64_t t) const;

  bool operator==(const GridPoint&) const = default;
};

struct MixTerm {
  std::string vehicle_type;
  std::string depot;
  double coefficient = 1.0;

  bool operator==(const MixTerm&) const = default;
};

// lower <= sum coefficient * (#vehicles of the plan type) <= upper.
struct MixConstraint {
  std::string id;
  std::vector<MixTerm> terms;
  std::optional<double> lower;
  std::optional<double> upper;

  bool operator==(const MixConstraint&) const = default;
};

struct Horizon {
  std::int64_t start = 0;
  std::int64_t end = 0;

  bool operator==(const Horizon&) const = default;
};

struct Instance {
  std::string name;
  Horizon horizon;
  std::vector<VehicleType> vehicle_types;
  std::vector<Depot> depots;
  std::vector<Trip> trips;
  std::vector<Deadhead> deadheads;
  std::vector<NamedProfile> profiles;
  std::vector<Charger> chargers;
  std::vector<GridPoint> grid_points;
  std::vector<MixConstraint> mix_constraints;
  // Free-form generator parameters, kept for provenance.
  std::map<std::string, std::string> metadata;

  const VehicleType& vehicle_type(const std::string& id) const;
  const Depot& depot(const std::string& id) const;
  const Trip& trip(const std::string& id) const;
  const Charger& charger(const std::string& id) const;
  const GridPoint& grid_point(const std::string& id) const;
  const ChargingPowerProfile& profile(const std::string& id) const;
  // Deadhead from -> to, or nullptr.
  const Deadhead* deadhead(const std::string& from, const std::string& to) const;

  bool operator==(const Instance&) const = default;
};

// A (vehicle type, depot) commodity.
struct PlanType {
  int index = 0;
  std::string vehicle_type;
  std::string depot;
  bool electric = false;

  std::string label() const { return vehicle_type + "@" + depot; }
  bool operator==(const PlanType&) const = default;
};

std::vector<PlanType> plan_types(const Instance& instance);

// Checks every documented invariant; throws InvariantViolation naming the
// first one that fails.
void validate_instance(const Instance& instance);

// Throws InvariantViolation("triangle-inequality", ...) when some triple of
// existing legs a->b, b->c, a->c violates e(a,c) <= e(a,b) + e(b,c).
void check_triangle_inequality(const Instance& instance, std::size_t max_triples = 2'000'000);

Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& text);
void save_instance(const Instance& instance, const std::string& path);
// Canonical serialized form; byte-stable for equal instances.
std::string dump_instance(const Instance& instance);

// Maximum power curves of all named profiles.
class ProfileCurves {
 public:
  ProfileCurves(const Instance& instance, const CurveOptions& options = {});
  const MaxPowerCurve& at(const std::string& profile_id) const;
  // Curve for a vehicle type at a charger; throws when the type cannot charge there.
  const MaxPowerCurve& for_charger(const Charger& charger, const std::string& vehicle_type) const;
  const CurveOptions& options() const { return options_; }

 private:
  CurveOptions options_;
  std::map<std::string, MaxPowerCurve> curves_;
};

void write_trips_csv(const Instance& instance, const std::string& path);
void write_deadheads_csv(const Instance& instance, const std::string& path);

}  // namespace ebsched

#endif  // EBSCHED_INSTANCE_HPP_

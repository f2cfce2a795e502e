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

#include "ebsched/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <unordered_map>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

template <typename T>
const T& find_by_id(const std::vector<T>& items, const std::string& id, const char* what) {
  for (const auto& item : items) {
    if (item.id == id) return item;
  }
  throw InvalidInput(std::string("unknown ") + what + " '" + id + "'");
}

[[noreturn]] void violated(const std::string& invariant, const std::string& what) {
  throw InvariantViolation(invariant, what);
}

template <typename T>
void check_unique_ids(const std::vector<T>& items, const char* what) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (item.id.empty()) violated("unique-ids", std::string("empty ") + what + " id");
    if (!seen.insert(item.id).second) {
      violated("unique-ids", std::string("duplicate ") + what + " id '" + item.id + "'");
    }
  }
}

void check_windows(const std::vector<TimeWindow>& windows, const std::string& owner) {
  for (const auto& w : windows) {
    if (w.end <= w.start) violated("window-order", owner + " has an empty availability window");
  }
}

void check_consumption_map(const Instance& inst, const std::map<std::string, double>& values,
                           const std::string& owner) {
  for (const auto& [type, e] : values) {
    bool known = std::any_of(inst.vehicle_types.begin(), inst.vehicle_types.end(),
                             [&](const VehicleType& v) { return v.id == type; });
    if (!known) violated("vehicle-type-reference", owner + " names unknown vehicle type '" + type + "'");
    if (!(e >= 0.0 && e <= 1.0)) {
      violated("consumption-range", owner + " consumption for '" + type + "' outside [0, 1]");
    }
  }
}

}  // namespace

double GridPoint::limit_at(std::int64_t t) const {
  double limit = std::numeric_limits<double>::infinity();
  bool windowed = false;
  for (const auto& w : power_windows) {
    if (w.start <= t && t < w.end) {
      limit = std::min(limit, w.max_kw);
      windowed = true;
    }
  }
  if (!windowed && max_kw) limit = *max_kw;
  return limit;
}

double GridPoint::step_limit(std::int64_t t0, std::int64_t t1) const {
  double limit = limit_at(t0);
  for (const auto& w : power_windows) {
    if (w.start > t0 && w.start < t1) limit = std::min(limit, limit_at(w.start));
    if (w.end > t0 && w.end < t1) limit = std::min(limit, limit_at(w.end));
  }
  return limit;
}

double GridPoint::price_at(std::int64_t t) const {
  for (const auto& w : price_windows) {
    if (w.start <= t && t < w.end) return w.price_per_kwh;
  }
  return price_per_kwh;
}

const VehicleType& Instance::vehicle_type(const std::string& id) const {
  return find_by_id(vehicle_types, id, "vehicle type");
}
const Depot& Instance::depot(const std::string& id) const { return find_by_id(depots, id, "depot"); }
const Trip& Instance::trip(const std::string& id) const { return find_by_id(trips, id, "trip"); }
const Charger& Instance::charger(const std::string& id) const {
  return find_by_id(chargers, id, "charger");
}
const GridPoint& Instance::grid_point(const std::string& id) const {
  return find_by_id(grid_points, id, "grid point");
}
const ChargingPowerProfile& Instance::profile(const std::string& id) const {
  return find_by_id(profiles, id, "profile").profile;
}

const Deadhead* Instance::deadhead(const std::string& from, const std::string& to) const {
  for (const auto& d : deadheads) {
    if (d.from == from && d.to == to) return &d;
  }
  return nullptr;
}

std::vector<PlanType> plan_types(const Instance& instance) {
  std::vector<PlanType> out;
  for (const auto& v : instance.vehicle_types) {
    for (const auto& d : instance.depots) {
      const bool stationed =
          d.vehicle_types.empty() ||
          std::find(d.vehicle_types.begin(), d.vehicle_types.end(), v.id) != d.vehicle_types.end();
      if (!stationed) continue;
      out.push_back({static_cast<int>(out.size()), v.id, d.id, v.electric});
    }
  }
  return out;
}

void validate_instance(const Instance& inst) {
  if (inst.horizon.end <= inst.horizon.start) violated("horizon", "horizon end must exceed start");
  check_unique_ids(inst.vehicle_types, "vehicle type");
  check_unique_ids(inst.depots, "depot");
  check_unique_ids(inst.trips, "trip");
  check_unique_ids(inst.profiles, "profile");
  check_unique_ids(inst.chargers, "charger");
  check_unique_ids(inst.grid_points, "grid point");
  check_unique_ids(inst.mix_constraints, "mix constraint");
  if (inst.vehicle_types.empty()) violated("vehicle-types", "instance has no vehicle types");
  if (inst.depots.empty()) violated("depots", "instance has no depots");

  for (const auto& v : inst.vehicle_types) {
    if (v.electric && !(v.battery_kwh > 0)) {
      violated("battery-capacity", "electric vehicle type '" + v.id + "' needs battery_kwh > 0");
    }
    if (v.cost_per_km < 0 || v.fixed_cost < 0) {
      violated("costs", "vehicle type '" + v.id + "' has a negative cost");
    }
  }
  for (const auto& d : inst.depots) {
    for (const auto& v : d.vehicle_types) {
      if (std::none_of(inst.vehicle_types.begin(), inst.vehicle_types.end(),
                       [&](const VehicleType& t) { return t.id == v; })) {
        violated("vehicle-type-reference", "depot '" + d.id + "' names unknown vehicle type '" + v + "'");
      }
    }
    if (d.capacity && *d.capacity < 0) violated("depot-capacity", "depot '" + d.id + "' capacity < 0");
  }

  std::set<std::string> locations;
  for (const auto& d : inst.depots) locations.insert(d.id);
  for (const auto& t : inst.trips) {
    if (t.start_location.empty() || t.end_location.empty()) {
      violated("trip-locations", "trip '" + t.id + "' lacks a terminal");
    }
    if (t.arrival < t.departure) violated("trip-times", "trip '" + t.id + "' arrives before it departs");
    if (t.departure < inst.horizon.start || t.arrival > inst.horizon.end) {
      violated("trip-times", "trip '" + t.id + "' lies outside the horizon");
    }
    check_consumption_map(inst, t.consumption, "trip '" + t.id + "'");
    locations.insert(t.start_location);
    locations.insert(t.end_location);
  }
  for (const auto& c : inst.chargers) locations.insert(c.location);

  for (const auto& p : inst.profiles) {
    if (!p.profile.is_non_increasing()) {
      violated("profile-monotone", "profile '" + p.id + "' is not non-increasing");
    }
  }
  for (const auto& g : inst.grid_points) {
    if (g.max_kw && *g.max_kw < 0) violated("grid-limit", "grid point '" + g.id + "' has max_kw < 0");
    for (const auto& w : g.power_windows) {
      if (w.end <= w.start || w.max_kw < 0) {
        violated("grid-limit", "grid point '" + g.id + "' has an invalid power window");
      }
    }
    for (const auto& w : g.price_windows) {
      if (w.end <= w.start) violated("window-order", "grid point '" + g.id + "' has an empty price window");
    }
  }
  for (const auto& c : inst.chargers) {
    if (c.location.empty()) violated("charger-location", "charger '" + c.id + "' has no location");
    if (c.slots < 1) violated("charger-slots", "charger '" + c.id + "' needs at least one slot");
    if (std::none_of(inst.grid_points.begin(), inst.grid_points.end(),
                     [&](const GridPoint& g) { return g.id == c.grid_point; })) {
      violated("charger-grid-point",
               "charger '" + c.id + "' references unknown grid point '" + c.grid_point + "'");
    }
    for (const auto& [type, profile] : c.profiles) {
      auto vt = std::find_if(inst.vehicle_types.begin(), inst.vehicle_types.end(),
                             [&](const VehicleType& v) { return v.id == type; });
      if (vt == inst.vehicle_types.end()) {
        violated("vehicle-type-reference",
                 "charger '" + c.id + "' names unknown vehicle type '" + type + "'");
      }
      if (!vt->electric) {
        violated("charger-electric", "charger '" + c.id + "' lists non-electric type '" + type + "'");
      }
      if (std::none_of(inst.profiles.begin(), inst.profiles.end(),
                       [&](const NamedProfile& p) { return p.id == profile; })) {
        violated("charger-profile",
                 "charger '" + c.id + "' references unknown profile '" + profile + "'");
      }
    }
    check_windows(c.availability, "charger '" + c.id + "'");
    if (!(c.arc_consumption >= 0 && c.arc_consumption <= 1)) {
      violated("consumption-range", "charger '" + c.id + "' arc consumption outside [0, 1]");
    }
  }

  std::set<std::pair<std::string, std::string>> legs;
  for (const auto& d : inst.deadheads) {
    const std::string name = "deadhead " + d.from + "->" + d.to;
    if (!locations.count(d.from)) violated("deadhead-endpoint", name + ": unknown location '" + d.from + "'");
    if (!locations.count(d.to)) violated("deadhead-endpoint", name + ": unknown location '" + d.to + "'");
    if (d.duration < 0) violated("deadhead-duration", name + " has negative duration");
    if (d.distance_km < 0) violated("deadhead-distance", name + " has negative distance");
    if (!legs.insert({d.from, d.to}).second) violated("unique-ids", "duplicate " + name);
    check_consumption_map(inst, d.consumption, name);
  }

  for (const auto& m : inst.mix_constraints) {
    for (const auto& term : m.terms) {
      if (std::none_of(inst.vehicle_types.begin(), inst.vehicle_types.end(),
                       [&](const VehicleType& v) { return v.id == term.vehicle_type; }) ||
          std::none_of(inst.depots.begin(), inst.depots.end(),
                       [&](const Depot& d) { return d.id == term.depot; })) {
        violated("mix-reference", "mix constraint '" + m.id + "' names an unknown plan type");
      }
    }
    if (m.lower && m.upper && *m.lower > *m.upper) {
      violated("mix-bounds", "mix constraint '" + m.id + "' has lower > upper");
    }
  }

  check_triangle_inequality(inst);
}

void check_triangle_inequality(const Instance& inst, std::size_t max_triples) {
  std::map<std::string, std::vector<const Deadhead*>> out;
  std::map<std::pair<std::string, std::string>, const Deadhead*> by_pair;
  for (const auto& d : inst.deadheads) {
    if (d.from == d.to) continue;
    out[d.from].push_back(&d);
    by_pair[{d.from, d.to}] = &d;
  }
  std::size_t checked = 0;
  for (const auto& [a, first_legs] : out) {
    for (const auto* ab : first_legs) {
      auto it = out.find(ab->to);
      if (it == out.end()) continue;
      for (const auto* bc : it->second) {
        if (bc->to == a) continue;
        auto ac = by_pair.find({a, bc->to});
        if (ac == by_pair.end()) continue;
        if (++checked > max_triples) return;
        for (const auto& [type, e_ac] : ac->second->consumption) {
          auto e_ab = ab->consumption.find(type);
          auto e_bc = bc->consumption.find(type);
          if (e_ab == ab->consumption.end() || e_bc == bc->consumption.end()) continue;
          if (e_ac > e_ab->second + e_bc->second + 1e-9) {
            violated("triangle-inequality", "e(" + a + "," + bc->to + ") exceeds e(" + a + "," +
                                                ab->to + ") + e(" + ab->to + "," + bc->to +
                                                ") for type '" + type + "'");
          }
        }
      }
    }
  }
}

ProfileCurves::ProfileCurves(const Instance& instance, const CurveOptions& options)
    : options_(options) {
  for (const auto& p : instance.profiles) {
    curves_.emplace(p.id, solve_max_power_curve(p.profile, options));
  }
}

const MaxPowerCurve& ProfileCurves::at(const std::string& profile_id) const {
  auto it = curves_.find(profile_id);
  if (it == curves_.end()) throw InvalidInput("unknown profile '" + profile_id + "'");
  return it->second;
}

const MaxPowerCurve& ProfileCurves::for_charger(const Charger& charger,
                                                const std::string& vehicle_type) const {
  auto it = charger.profiles.find(vehicle_type);
  if (it == charger.profiles.end()) {
    throw InvalidInput("vehicle type '" + vehicle_type + "' cannot charge at '" + charger.id + "'");
  }
  return at(it->second);
}

void write_trips_csv(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17) << "id,start_location,end_location,departure,arrival,vehicle_type,consumption\n";
  for (const auto& t : inst.trips) {
    for (const auto& [type, e] : t.consumption) {
      out << t.id << ',' << t.start_location << ',' << t.end_location << ',' << t.departure << ','
          << t.arrival << ',' << type << ',' << e << '\n';
    }
  }
}

void write_deadheads_csv(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17) << "from,to,duration,distance_km,vehicle_type,consumption\n";
  for (const auto& d : inst.deadheads) {
    for (const auto& [type, e] : d.consumption) {
      out << d.from << ',' << d.to << ',' << d.duration << ',' << d.distance_km << ',' << type
          << ',' << e << '\n';
    }
  }
}

}  // namespace ebsched

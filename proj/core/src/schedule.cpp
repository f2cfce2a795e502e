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

#include "ebsched/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormat = "ebsched-schedule";

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> read_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

double ChargeEvent::total() const { return std::accumulate(phi.begin(), phi.end(), 0.0); }

std::size_t Course::charge_events() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const CourseItem& i) {
    return i.kind == CourseItem::Kind::kCharge;
  }));
}

std::string dump_schedule(const Schedule& s) {
  Json doc = Json::object();
  doc["format"] = kFormat;
  doc["version"] = 1;
  doc["instance"] = s.instance;
  doc["theta"] = s.theta;
  doc["segments"] = s.segments;
  doc["estimator"] = s.estimator;
  doc["status"] = s.status;
  doc["objective"] = optional_number(s.objective);
  doc["bound"] = optional_number(s.bound);
  Json courses = Json::array();
  for (const auto& c : s.courses) {
    Json items = Json::array();
    for (const auto& item : c.items) {
      switch (item.kind) {
        case CourseItem::Kind::kTrip:
          items.push_back({{"trip", item.trip}});
          break;
        case CourseItem::Kind::kCharge: {
          const auto& e = item.charge;
          items.push_back({{"charge",
                            {{"charger", e.charger},
                             {"slot", e.slot},
                             {"first_step", e.first_step},
                             {"start", e.start},
                             {"end", e.end},
                             {"phi", e.phi}}}});
          break;
        }
        case CourseItem::Kind::kPark:
          items.push_back({{"park", {{"depot", item.park.depot}, {"start", item.park.start}, {"end", item.park.end}}}});
          break;
      }
    }
    courses.push_back({{"id", c.id}, {"vehicle_type", c.vehicle_type}, {"depot", c.depot}, {"items", items}});
  }
  doc["courses"] = courses;
  return doc.dump(1) + "\n";
}

Schedule parse_schedule(const std::string& text) {
  Schedule s;
  try {
    const Json doc = Json::parse(text);
    if (doc.value("format", "") != kFormat) throw InvalidInput("not an ebsched schedule document");
    s.instance = doc.value("instance", "");
    s.theta = doc.at("theta").get<std::int64_t>();
    s.segments = doc.value("segments", 0);
    s.estimator = doc.value("estimator", "");
    s.status = doc.value("status", "");
    s.objective = read_optional(doc, "objective");
    s.bound = read_optional(doc, "bound");
    for (const auto& jc : doc.at("courses")) {
      Course c;
      c.id = jc.at("id").get<std::string>();
      c.vehicle_type = jc.at("vehicle_type").get<std::string>();
      c.depot = jc.at("depot").get<std::string>();
      for (const auto& ji : jc.at("items")) {
        CourseItem item;
        if (ji.contains("trip")) {
          item.kind = CourseItem::Kind::kTrip;
          item.trip = ji.at("trip").get<std::string>();
        } else if (ji.contains("charge")) {
          const auto& e = ji.at("charge");
          item.kind = CourseItem::Kind::kCharge;
          item.charge.charger = e.at("charger").get<std::string>();
          item.charge.slot = e.value("slot", 0);
          item.charge.first_step = e.value("first_step", 0);
          item.charge.start = e.at("start").get<std::int64_t>();
          item.charge.end = e.at("end").get<std::int64_t>();
          item.charge.phi = e.value("phi", std::vector<double>{});
        } else if (ji.contains("park")) {
          const auto& p = ji.at("park");
          item.kind = CourseItem::Kind::kPark;
          item.park.depot = p.at("depot").get<std::string>();
          item.park.start = p.at("start").get<std::int64_t>();
          item.park.end = p.at("end").get<std::int64_t>();
        } else {
          throw InvalidInput("course item in '" + c.id + "' is neither trip, charge nor park");
        }
        c.items.push_back(std::move(item));
      }
      s.courses.push_back(std::move(c));
    }
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed schedule: ") + e.what());
  }
  return s;
}

void save_schedule(const Schedule& schedule, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << dump_schedule(schedule);
}

Schedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read schedule file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_schedule(buffer.str());
}

void write_phi_csv(const Schedule& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "course,charger,slot,step,time,phi\n";
  char buf[64];
  for (const auto& c : s.courses) {
    for (const auto& item : c.items) {
      if (item.kind != CourseItem::Kind::kCharge) continue;
      const auto& e = item.charge;
      for (std::size_t i = 0; i < e.phi.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", e.phi[i]);
        out << c.id << ',' << e.charger << ',' << e.slot << ',' << e.first_step + static_cast<int>(i) + 1 << ','
            << e.start + s.theta * static_cast<std::int64_t>(i) << ',' << buf << '\n';
      }
    }
  }
}

void check_schedule_structure(const Instance& inst, const Schedule& s) {
  std::set<std::string> seen;
  auto known = [](auto&& range, const std::string& id) {
    return std::any_of(range.begin(), range.end(), [&](const auto& x) { return x.id == id; });
  };
  for (const auto& c : s.courses) {
    if (!known(inst.vehicle_types, c.vehicle_type)) {
      throw StructureError("course '" + c.id + "' uses unknown vehicle type '" + c.vehicle_type + "'");
    }
    if (!known(inst.depots, c.depot)) throw StructureError("course '" + c.id + "' uses unknown depot '" + c.depot + "'");
    for (const auto& item : c.items) {
      switch (item.kind) {
        case CourseItem::Kind::kTrip:
          if (!known(inst.trips, item.trip)) {
            throw StructureError("course '" + c.id + "' references unknown trip '" + item.trip + "'");
          }
          if (!seen.insert(item.trip).second) throw StructureError("trip '" + item.trip + "' is served twice");
          break;
        case CourseItem::Kind::kCharge:
          if (!known(inst.chargers, item.charge.charger)) {
            throw StructureError("course '" + c.id + "' references unknown charger '" + item.charge.charger + "'");
          }
          if (item.charge.end < item.charge.start) {
            throw StructureError("charge event in course '" + c.id + "' ends before it starts");
          }
          break;
        case CourseItem::Kind::kPark:
          if (!known(inst.depots, item.park.depot)) {
            throw StructureError("course '" + c.id + "' parks at unknown depot '" + item.park.depot + "'");
          }
          break;
      }
    }
  }
}

double schedule_cost(const Instance& inst, const Schedule& s) {
  check_schedule_structure(inst, s);
  double total = 0.0;
  for (const auto& c : s.courses) {
    const auto& v = inst.vehicle_type(c.vehicle_type);
    total += v.fixed_cost;
    std::string loc = c.depot;
    for (const auto& item : c.items) {
      switch (item.kind) {
        case CourseItem::Kind::kTrip: {
          const auto& t = inst.trip(item.trip);
          total += leg_cost(inst, loc, t.start_location, c.vehicle_type);
          loc = t.end_location;
          break;
        }
        case CourseItem::Kind::kCharge: {
          const auto& ch = inst.charger(item.charge.charger);
          total += leg_cost(inst, loc, ch.location, c.vehicle_type);
          loc = ch.location;
          const auto& grid = inst.grid_point(ch.grid_point);
          for (std::size_t i = 0; i < item.charge.phi.size(); ++i) {
            const std::int64_t t0 = item.charge.start + s.theta * static_cast<std::int64_t>(i);
            total += grid.price_at(t0) * v.battery_kwh * item.charge.phi[i];
          }
          break;
        }
        case CourseItem::Kind::kPark:
          total += leg_cost(inst, loc, item.park.depot, c.vehicle_type);
          loc = item.park.depot;
          break;
      }
    }
    total += leg_cost(inst, loc, c.depot, c.vehicle_type);
  }
  return total;
}

Schedule decode_solution(const MilpModel& model, const RawSolution& raw, const SchedulingGraph& g) {
  if (!raw.has_incumbent) throw DecodeError("solution has no incumbent");
  const Instance& inst = *g.instance;
  const std::size_t n_arcs = g.arcs.size();

  std::vector<std::vector<char>> remaining(n_arcs);
  for (std::size_t a = 0; a < n_arcs; ++a) {
    remaining[a].assign(model.x[a].size(), 0);
    for (std::size_t j = 0; j < model.x[a].size(); ++j) {
      const auto& var = model.variables[static_cast<std::size_t>(model.x[a][j])];
      const double v = raw.value(var.name);
      const double r = std::round(v);
      if (std::abs(v - r) > kIntegralityTolerance || r < 0.0 || r > 1.0) {
        throw DecodeError("variable " + var.name + " = " + std::to_string(v) + " is not binary");
      }
      remaining[a][j] = r > 0.5 ? 1 : 0;
    }
  }
  auto phi_value = [&](std::size_t a, std::size_t j) {
    if (model.phi[a].empty() || model.phi[a][j] < 0) return 0.0;
    return std::max(0.0, raw.value(model.variables[static_cast<std::size_t>(model.phi[a][j])].name));
  };

  struct Path {
    int plan_type;
    std::vector<CourseItem> items;
  };
  std::vector<Path> paths;
  for (const auto& k : g.plan_types) {
    for (std::size_t d = 0; d < inst.depots.size(); ++d) {
      if (inst.depots[d].id != k.depot) continue;
      auto next_arc = [&](int node) -> std::pair<int, int> {
        for (int a : g.out_arcs[static_cast<std::size_t>(node)]) {
          const int j = g.arcs[static_cast<std::size_t>(a)].type_slot(k.index);
          if (j >= 0 && remaining[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)]) return {a, j};
        }
        return {-1, -1};
      };
      while (true) {
        auto [a, j] = next_arc(g.depot_start_node[d]);
        if (a < 0) break;
        Path path{k.index, {}};
        ChargeEvent event;
        ParkEvent park;
        while (true) {
          remaining[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] = 0;
          const auto& arc = g.arcs[static_cast<std::size_t>(a)];
          const auto& head = g.nodes[static_cast<std::size_t>(arc.head)];
          const auto& tail = g.nodes[static_cast<std::size_t>(arc.tail)];
          auto push_trip = [&] {
            CourseItem item;
            item.trip = inst.trips[static_cast<std::size_t>(head.ref)].id;
            path.items.push_back(std::move(item));
          };
          switch (arc.kind) {
            case ArcKind::kPullOut:
            case ArcKind::kConnection:
              push_trip();
              break;
            case ArcKind::kAccess: {
              const auto& tl = g.timelines[static_cast<std::size_t>(head.timeline)];
              event = ChargeEvent{};
              event.charger = inst.chargers[static_cast<std::size_t>(tl.charger)].id;
              event.slot = tl.slot;
              event.first_step = head.step;
              event.start = head.time;
              break;
            }
            case ArcKind::kRecharge:
              event.phi.push_back(phi_value(static_cast<std::size_t>(a), static_cast<std::size_t>(j)));
              break;
            case ArcKind::kEgress: {
              event.end = tail.time;
              CourseItem item;
              item.kind = CourseItem::Kind::kCharge;
              item.charge = std::move(event);
              path.items.push_back(std::move(item));
              push_trip();
              break;
            }
            case ArcKind::kParkIn:
              park = ParkEvent{inst.depots[static_cast<std::size_t>(head.ref)].id, head.time, head.time};
              break;
            case ArcKind::kParkWait:
              break;
            case ArcKind::kParkOut:
            case ArcKind::kParkEnd: {
              park.end = tail.time;
              CourseItem item;
              item.kind = CourseItem::Kind::kPark;
              item.park = park;
              path.items.push_back(std::move(item));
              if (arc.kind == ArcKind::kParkOut) push_trip();
              break;
            }
            case ArcKind::kPullIn:
              break;
          }
          if (head.kind == NodeKind::kDepotEnd) break;
          std::tie(a, j) = next_arc(head.id);
          if (a < 0) throw DecodeError("flow imbalance at node " + head.label);
        }
        paths.push_back(std::move(path));
      }
    }
  }
  for (std::size_t a = 0; a < n_arcs; ++a) {
    for (char r : remaining[a]) {
      if (r) throw DecodeError("flow imbalance at node " + g.nodes[static_cast<std::size_t>(g.arcs[a].tail)].label);
    }
  }

  std::map<std::string, int> visits;
  for (const auto& p : paths) {
    for (const auto& item : p.items) {
      if (item.kind == CourseItem::Kind::kTrip) ++visits[item.trip];
    }
  }
  for (const auto& t : inst.trips) {
    const int v = visits[t.id];
    if (v == 0) throw DecodeError("trip '" + t.id + "' is not covered");
    if (v > 1) throw DecodeError("trip '" + t.id + "' is covered " + std::to_string(v) + " times");
  }

  auto first_departure = [&](const Path& p) {
    for (const auto& item : p.items) {
      if (item.kind == CourseItem::Kind::kTrip) return inst.trip(item.trip).departure;
    }
    return inst.horizon.end;
  };
  std::stable_sort(paths.begin(), paths.end(), [&](const Path& a, const Path& b) {
    return std::make_pair(first_departure(a), a.plan_type) < std::make_pair(first_departure(b), b.plan_type);
  });

  Schedule s;
  s.instance = inst.name;
  s.theta = g.theta;
  s.status = to_string(raw.status);
  s.objective = raw.objective;
  s.bound = raw.bound;
  char id[32];
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& k = g.plan_types[static_cast<std::size_t>(paths[i].plan_type)];
    std::snprintf(id, sizeof id, "bus%03zu", i + 1);
    s.courses.push_back({id, k.vehicle_type, k.depot, std::move(paths[i].items)});
  }
  return s;
}

}  // namespace ebsched

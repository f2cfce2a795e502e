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

#include "ebsched/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

struct Leg {
  bool exists = false;
  std::int64_t duration = 0;
  const Deadhead* deadhead = nullptr;  // nullptr for a zero-length leg

  bool admits(const std::string& type) const {
    return exists && (deadhead == nullptr || deadhead->consumption.count(type) > 0);
  }
  double consumption(const std::string& type) const {
    return deadhead == nullptr ? 0.0 : deadhead->consumption.at(type);
  }
};

class LegTable {
 public:
  explicit LegTable(const Instance& inst) {
    for (const auto& d : inst.deadheads) table_[{d.from, d.to}] = &d;
  }
  Leg get(const std::string& from, const std::string& to) const {
    if (from == to) {
      auto it = table_.find({from, to});
      return {true, it == table_.end() ? 0 : it->second->duration,
              it == table_.end() ? nullptr : it->second};
    }
    auto it = table_.find({from, to});
    if (it == table_.end()) return {};
    return {true, it->second->duration, it->second};
  }

 private:
  std::map<std::pair<std::string, std::string>, const Deadhead*> table_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kDepotStart: return "depot_start";
    case NodeKind::kDepotEnd: return "depot_end";
    case NodeKind::kTrip: return "trip";
    case NodeKind::kCharge: return "charge";
    case NodeKind::kParking: return "parking";
  }
  return "unknown";
}

std::string to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::kPullOut: return "pull_out";
    case ArcKind::kPullIn: return "pull_in";
    case ArcKind::kConnection: return "connection";
    case ArcKind::kAccess: return "access";
    case ArcKind::kEgress: return "egress";
    case ArcKind::kRecharge: return "recharge";
    case ArcKind::kParkIn: return "park_in";
    case ArcKind::kParkOut: return "park_out";
    case ArcKind::kParkWait: return "park_wait";
    case ArcKind::kParkEnd: return "park_end";
  }
  return "unknown";
}

int Arc::type_slot(int plan_type) const {
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i] == plan_type) return static_cast<int>(i);
  }
  return -1;
}

double leg_cost(const Instance& inst, const std::string& from, const std::string& to,
                const std::string& vehicle_type) {
  const Deadhead* d = inst.deadhead(from, to);
  if (d == nullptr) return 0.0;
  return d->distance_km * inst.vehicle_type(vehicle_type).cost_per_km;
}

bool SchedulingGraph::is_acyclic() const {
  return topological_order.size() == nodes.size();
}

SchedulingGraph build_graph(const Instance& inst, std::int64_t theta, const GraphOptions& options) {
  if (theta <= 0) throw BuildError("theta must be a positive number of seconds");
  const std::int64_t span = inst.horizon.end - inst.horizon.start;
  if (span <= 0) throw BuildError("empty horizon");
  if (span % theta != 0) {
    throw BuildError("theta " + std::to_string(theta) + " does not divide the horizon length " +
                     std::to_string(span));
  }
  if (options.access_lookahead < 1) throw BuildError("access_lookahead must be at least 1");

  SchedulingGraph g;
  g.instance = &inst;
  g.theta = theta;
  g.horizon_start = inst.horizon.start;
  g.horizon_steps = static_cast<int>(span / theta);
  g.plan_types = plan_types(inst);
  const int H = g.horizon_steps;
  const LegTable legs(inst);

  std::map<std::string, int> depot_index;
  for (std::size_t d = 0; d < inst.depots.size(); ++d) depot_index[inst.depots[d].id] = static_cast<int>(d);
  std::map<std::string, int> grid_index;
  for (std::size_t i = 0; i < inst.grid_points.size(); ++i) grid_index[inst.grid_points[i].id] = static_cast<int>(i);

  auto add_node = [&](NodeKind kind, int ref, std::int64_t time, std::string label) {
    Node n;
    n.id = static_cast<int>(g.nodes.size());
    n.kind = kind;
    n.ref = ref;
    n.time = time;
    n.label = std::move(label);
    g.nodes.push_back(n);
    return n.id;
  };

  for (std::size_t d = 0; d < inst.depots.size(); ++d) {
    g.depot_start_node.push_back(add_node(NodeKind::kDepotStart, static_cast<int>(d),
                                          inst.horizon.start, inst.depots[d].id + "^s"));
  }
  for (std::size_t t = 0; t < inst.trips.size(); ++t) {
    g.trip_node.push_back(add_node(NodeKind::kTrip, static_cast<int>(t), inst.trips[t].departure,
                                   inst.trips[t].id));
  }
  for (std::size_t c = 0; c < inst.chargers.size(); ++c) {
    const auto& ch = inst.chargers[c];
    for (int s = 0; s < ch.slots; ++s) {
      Timeline tl;
      tl.charger = static_cast<int>(c);
      tl.slot = s;
      tl.grid_point = grid_index.at(ch.grid_point);
      const int index = static_cast<int>(g.timelines.size());
      for (int i = 0; i <= H; ++i) {
        const int id = add_node(NodeKind::kCharge, static_cast<int>(c), g.time_of_step(i),
                                ch.id + "/" + std::to_string(s) + "_" + std::to_string(i));
        g.nodes[id].timeline = index;
        g.nodes[id].step = i;
        tl.nodes.push_back(id);
      }
      g.timelines.push_back(std::move(tl));
    }
  }
  if (options.parking_timelines) {
    for (std::size_t d = 0; d < inst.depots.size(); ++d) {
      Timeline tl;
      tl.depot = static_cast<int>(d);
      const int index = static_cast<int>(g.timelines.size());
      for (int i = 0; i <= H; ++i) {
        const int id = add_node(NodeKind::kParking, static_cast<int>(d), g.time_of_step(i),
                                inst.depots[d].id + "/park_" + std::to_string(i));
        g.nodes[id].timeline = index;
        g.nodes[id].step = i;
        tl.nodes.push_back(id);
      }
      g.timelines.push_back(std::move(tl));
    }
  }
  for (std::size_t d = 0; d < inst.depots.size(); ++d) {
    g.depot_end_node.push_back(add_node(NodeKind::kDepotEnd, static_cast<int>(d), inst.horizon.end,
                                        inst.depots[d].id + "^e"));
  }

  std::vector<Arc> arcs;
  auto add_arc = [&](int tail, int head, ArcKind kind, Arc proto) {
    if (proto.types.empty()) return -1;
    proto.tail = tail;
    proto.head = head;
    proto.kind = kind;
    proto.id = static_cast<int>(arcs.size());
    arcs.push_back(std::move(proto));
    return static_cast<int>(arcs.size()) - 1;
  };
  const auto& K = g.plan_types;
  auto vtype = [&](int k) -> const std::string& { return K[static_cast<std::size_t>(k)].vehicle_type; };
  auto trip_admits = [&](const Trip& t, int k) { return t.consumption.count(vtype(k)) > 0; };
  auto charger_admits = [&](const Charger& c, int k) {
    return K[static_cast<std::size_t>(k)].electric && c.profiles.count(vtype(k)) > 0;
  };

  // Depot arcs: plan types of that depot only.
  for (std::size_t d = 0; d < inst.depots.size(); ++d) {
    const auto& depot = inst.depots[d];
    for (std::size_t t = 0; t < inst.trips.size(); ++t) {
      const auto& trip = inst.trips[t];
      const Leg out = legs.get(depot.id, trip.start_location);
      const Leg in = legs.get(trip.end_location, depot.id);
      Arc pull_out;
      Arc pull_in;
      for (const auto& k : K) {
        if (k.depot != depot.id || !trip_admits(trip, k.index)) continue;
        const auto& v = inst.vehicle_type(k.vehicle_type);
        if (out.admits(k.vehicle_type) && inst.horizon.start + out.duration <= trip.departure) {
          pull_out.types.push_back(k.index);
          pull_out.consumption.push_back(out.consumption(k.vehicle_type) + trip.consumption.at(k.vehicle_type));
          pull_out.cost.push_back(v.fixed_cost + leg_cost(inst, depot.id, trip.start_location, k.vehicle_type));
        }
        if (in.admits(k.vehicle_type) && trip.arrival + in.duration <= inst.horizon.end) {
          pull_in.types.push_back(k.index);
          pull_in.consumption.push_back(in.consumption(k.vehicle_type));
          pull_in.cost.push_back(leg_cost(inst, trip.end_location, depot.id, k.vehicle_type));
        }
      }
      add_arc(g.depot_start_node[d], g.trip_node[t], ArcKind::kPullOut, std::move(pull_out));
      add_arc(g.trip_node[t], g.depot_end_node[d], ArcKind::kPullIn, std::move(pull_in));
    }
  }

  // Trip-to-trip connections, only along listed deadheads.
  for (std::size_t u = 0; u < inst.trips.size(); ++u) {
    const auto& a = inst.trips[u];
    for (std::size_t v = 0; v < inst.trips.size(); ++v) {
      if (u == v) continue;
      const auto& b = inst.trips[v];
      const Leg leg = legs.get(a.end_location, b.start_location);
      if (!leg.exists || a.arrival + leg.duration > b.departure) continue;
      Arc arc;
      for (const auto& k : K) {
        if (!trip_admits(a, k.index) || !trip_admits(b, k.index) || !leg.admits(k.vehicle_type)) continue;
        arc.types.push_back(k.index);
        arc.consumption.push_back(leg.consumption(k.vehicle_type) + b.consumption.at(k.vehicle_type));
        arc.cost.push_back(leg_cost(inst, a.end_location, b.start_location, k.vehicle_type));
      }
      add_arc(g.trip_node[u], g.trip_node[v], ArcKind::kConnection, std::move(arc));
    }
  }

  // Charger timelines: recharge arcs, then access and egress.
  for (std::size_t tl_index = 0; tl_index < g.timelines.size(); ++tl_index) {
    const auto& tl = g.timelines[tl_index];
    if (tl.charger < 0) continue;
    const auto& ch = inst.chargers[static_cast<std::size_t>(tl.charger)];
    const auto& grid = inst.grid_points[static_cast<std::size_t>(tl.grid_point)];
    for (int i = 1; i <= H; ++i) {
      const std::int64_t t0 = g.time_of_step(i - 1);
      const std::int64_t t1 = g.time_of_step(i);
      Arc arc;
      arc.timeline = static_cast<int>(tl_index);
      arc.step = i;
      arc.available = ch.availability.empty() ||
                      std::any_of(ch.availability.begin(), ch.availability.end(),
                                  [&](const TimeWindow& w) { return w.start <= t0 && t1 <= w.end; });
      for (const auto& k : K) {
        if (!charger_admits(ch, k.index)) continue;
        const double battery = inst.vehicle_type(k.vehicle_type).battery_kwh;
        arc.types.push_back(k.index);
        arc.consumption.push_back(ch.arc_consumption);
        arc.cost.push_back(0.0);
        arc.omega.push_back(battery * 3600.0 / static_cast<double>(theta));
        arc.energy_cost.push_back(grid.price_at(t0) * battery);
      }
      add_arc(tl.nodes[static_cast<std::size_t>(i - 1)], tl.nodes[static_cast<std::size_t>(i)],
              ArcKind::kRecharge, std::move(arc));
    }
    for (std::size_t t = 0; t < inst.trips.size(); ++t) {
      const auto& trip = inst.trips[t];
      const Leg access = legs.get(trip.end_location, ch.location);
      if (access.exists) {
        const std::int64_t i0 =
            std::max<std::int64_t>(0, ceil_div(trip.arrival + access.duration - g.horizon_start, theta));
        for (std::int64_t i = i0; i < i0 + options.access_lookahead && i <= H; ++i) {
          Arc arc;
          for (const auto& k : K) {
            if (!charger_admits(ch, k.index) || !trip_admits(trip, k.index) || !access.admits(k.vehicle_type)) continue;
            arc.types.push_back(k.index);
            arc.consumption.push_back(access.consumption(k.vehicle_type));
            arc.cost.push_back(leg_cost(inst, trip.end_location, ch.location, k.vehicle_type));
          }
          add_arc(g.trip_node[t], tl.nodes[static_cast<std::size_t>(i)], ArcKind::kAccess, std::move(arc));
        }
      }
      const Leg egress = legs.get(ch.location, trip.start_location);
      if (egress.exists) {
        const std::int64_t j = std::min<std::int64_t>(
            H, floor_div(trip.departure - egress.duration - g.horizon_start, theta));
        for (std::int64_t i = j; i > j - options.access_lookahead && i >= 0; --i) {
          Arc arc;
          for (const auto& k : K) {
            if (!charger_admits(ch, k.index) || !trip_admits(trip, k.index) || !egress.admits(k.vehicle_type)) continue;
            arc.types.push_back(k.index);
            arc.consumption.push_back(egress.consumption(k.vehicle_type) + trip.consumption.at(k.vehicle_type));
            arc.cost.push_back(leg_cost(inst, ch.location, trip.start_location, k.vehicle_type));
          }
          add_arc(tl.nodes[static_cast<std::size_t>(i)], g.trip_node[t], ArcKind::kEgress, std::move(arc));
        }
      }
    }
  }

  // Optional depot parking timelines.
  for (std::size_t tl_index = 0; tl_index < g.timelines.size(); ++tl_index) {
    const auto& tl = g.timelines[tl_index];
    if (tl.depot < 0) continue;
    const auto& depot = inst.depots[static_cast<std::size_t>(tl.depot)];
    std::vector<int> depot_types;
    for (const auto& k : K) {
      if (k.depot == depot.id) depot_types.push_back(k.index);
    }
    for (int i = 1; i <= H; ++i) {
      Arc arc;
      arc.timeline = static_cast<int>(tl_index);
      arc.step = i;
      for (int k : depot_types) {
        arc.types.push_back(k);
        arc.consumption.push_back(0.0);
        arc.cost.push_back(0.0);
      }
      add_arc(tl.nodes[static_cast<std::size_t>(i - 1)], tl.nodes[static_cast<std::size_t>(i)],
              ArcKind::kParkWait, std::move(arc));
    }
    {
      Arc arc;
      for (int k : depot_types) {
        arc.types.push_back(k);
        arc.consumption.push_back(0.0);
        arc.cost.push_back(0.0);
      }
      add_arc(tl.nodes.back(), g.depot_end_node[static_cast<std::size_t>(tl.depot)], ArcKind::kParkEnd,
              std::move(arc));
    }
    for (std::size_t t = 0; t < inst.trips.size(); ++t) {
      const auto& trip = inst.trips[t];
      const Leg in = legs.get(trip.end_location, depot.id);
      if (in.exists) {
        const std::int64_t i = ceil_div(trip.arrival + in.duration - g.horizon_start, theta);
        if (i >= 0 && i <= H) {
          Arc arc;
          for (int k : depot_types) {
            if (!trip_admits(trip, k) || !in.admits(vtype(k))) continue;
            arc.types.push_back(k);
            arc.consumption.push_back(in.consumption(vtype(k)));
            arc.cost.push_back(leg_cost(inst, trip.end_location, depot.id, vtype(k)));
          }
          add_arc(g.trip_node[t], tl.nodes[static_cast<std::size_t>(i)], ArcKind::kParkIn, std::move(arc));
        }
      }
      const Leg out = legs.get(depot.id, trip.start_location);
      if (out.exists) {
        const std::int64_t j = floor_div(trip.departure - out.duration - g.horizon_start, theta);
        if (j >= 0 && j <= H) {
          Arc arc;
          for (int k : depot_types) {
            if (!trip_admits(trip, k) || !out.admits(vtype(k))) continue;
            arc.types.push_back(k);
            arc.consumption.push_back(out.consumption(vtype(k)) + trip.consumption.at(vtype(k)));
            arc.cost.push_back(leg_cost(inst, depot.id, trip.start_location, vtype(k)));
          }
          add_arc(tl.nodes[static_cast<std::size_t>(j)], g.trip_node[t], ArcKind::kParkOut, std::move(arc));
        }
      }
    }
  }

  // Reachability from depot starts and to depot ends.
  const std::size_t n_nodes = g.nodes.size();
  std::vector<std::vector<int>> out(n_nodes), in(n_nodes);
  for (const auto& a : arcs) {
    out[static_cast<std::size_t>(a.tail)].push_back(a.id);
    in[static_cast<std::size_t>(a.head)].push_back(a.id);
  }
  auto sweep = [&](const std::vector<int>& seeds, bool forward) {
    std::vector<char> seen(n_nodes, 0);
    std::deque<int> queue(seeds.begin(), seeds.end());
    for (int s : seeds) seen[static_cast<std::size_t>(s)] = 1;
    while (!queue.empty()) {
      const int n = queue.front();
      queue.pop_front();
      for (int a : forward ? out[static_cast<std::size_t>(n)] : in[static_cast<std::size_t>(n)]) {
        const int m = forward ? arcs[static_cast<std::size_t>(a)].head : arcs[static_cast<std::size_t>(a)].tail;
        if (!seen[static_cast<std::size_t>(m)]) {
          seen[static_cast<std::size_t>(m)] = 1;
          queue.push_back(m);
        }
      }
    }
    return seen;
  };
  const auto from_depot = sweep(g.depot_start_node, true);
  const auto to_depot = sweep(g.depot_end_node, false);
  for (std::size_t t = 0; t < inst.trips.size(); ++t) {
    const auto n = static_cast<std::size_t>(g.trip_node[t]);
    if (!options.allow_unreachable_trips && (!from_depot[n] || !to_depot[n])) {
      throw BuildError("trip '" + inst.trips[t].id + "' lies on no depot-to-depot path");
    }
  }

  for (auto& tl : g.timelines) tl.arcs.clear();
  for (auto& a : arcs) {
    const bool timeline_arc = a.kind == ArcKind::kRecharge || a.kind == ArcKind::kParkWait;
    if (options.prune && !timeline_arc &&
        !(from_depot[static_cast<std::size_t>(a.tail)] && to_depot[static_cast<std::size_t>(a.head)])) {
      continue;
    }
    a.id = static_cast<int>(g.arcs.size());
    if (a.kind == ArcKind::kRecharge) g.timelines[static_cast<std::size_t>(a.timeline)].arcs.push_back(a.id);
    g.arcs.push_back(std::move(a));
  }

  g.out_arcs.assign(n_nodes, {});
  g.in_arcs.assign(n_nodes, {});
  for (const auto& a : g.arcs) {
    g.out_arcs[static_cast<std::size_t>(a.tail)].push_back(a.id);
    g.in_arcs[static_cast<std::size_t>(a.head)].push_back(a.id);
  }

  // Kahn's algorithm; all arcs go forward in time, so this never stalls on
  // valid input.
  std::vector<int> indegree(n_nodes, 0);
  for (const auto& a : g.arcs) ++indegree[static_cast<std::size_t>(a.head)];
  std::deque<int> ready;
  for (std::size_t n = 0; n < n_nodes; ++n) {
    if (indegree[n] == 0) ready.push_back(static_cast<int>(n));
  }
  while (!ready.empty()) {
    const int n = ready.front();
    ready.pop_front();
    g.topological_order.push_back(n);
    for (int a : g.out_arcs[static_cast<std::size_t>(n)]) {
      const int h = g.arcs[static_cast<std::size_t>(a)].head;
      if (--indegree[static_cast<std::size_t>(h)] == 0) ready.push_back(h);
    }
  }
  if (!g.is_acyclic()) throw BuildError("scheduling graph has a cycle (zero-duration trip?)");

  g.grid_limit.assign(inst.grid_points.size(), std::vector<double>(static_cast<std::size_t>(H)));
  for (std::size_t gp = 0; gp < inst.grid_points.size(); ++gp) {
    for (int i = 1; i <= H; ++i) {
      g.grid_limit[gp][static_cast<std::size_t>(i - 1)] =
          inst.grid_points[gp].step_limit(g.time_of_step(i - 1), g.time_of_step(i));
    }
  }
  return g;
}

EnergyBounds compute_energy_bounds(const SchedulingGraph& g) {
  if (!g.is_acyclic()) throw BuildError("energy bounds need an acyclic graph");
  const std::size_t n_nodes = g.nodes.size();
  const std::size_t n_types = g.plan_types.size();
  const double inf = std::numeric_limits<double>::infinity();
  EnergyBounds b;
  b.min_exit.assign(n_nodes, std::vector<double>(n_types, inf));
  b.max_arrival.assign(n_nodes, std::vector<double>(n_types, -inf));

  auto is_anchor_exit = [&](const Node& n) {
    return n.kind == NodeKind::kDepotEnd || n.kind == NodeKind::kDepotStart || n.kind == NodeKind::kCharge;
  };
  auto is_anchor_entry = [&](const Node& n) {
    return n.kind == NodeKind::kDepotStart || n.kind == NodeKind::kCharge;
  };

  for (auto it = g.topological_order.rbegin(); it != g.topological_order.rend(); ++it) {
    const auto n = static_cast<std::size_t>(*it);
    if (is_anchor_exit(g.nodes[n])) {
      std::fill(b.min_exit[n].begin(), b.min_exit[n].end(), 0.0);
      continue;
    }
    for (int a_id : g.out_arcs[n]) {
      const auto& a = g.arcs[static_cast<std::size_t>(a_id)];
      for (std::size_t j = 0; j < a.types.size(); ++j) {
        const auto k = static_cast<std::size_t>(a.types[j]);
        const double tail_value = a.consumption[j] + b.min_exit[static_cast<std::size_t>(a.head)][k];
        b.min_exit[n][k] = std::min(b.min_exit[n][k], tail_value);
      }
    }
  }
  for (int node : g.topological_order) {
    const auto n = static_cast<std::size_t>(node);
    if (is_anchor_entry(g.nodes[n])) {
      std::fill(b.max_arrival[n].begin(), b.max_arrival[n].end(), 1.0);
      continue;
    }
    for (int a_id : g.in_arcs[n]) {
      const auto& a = g.arcs[static_cast<std::size_t>(a_id)];
      for (std::size_t j = 0; j < a.types.size(); ++j) {
        const auto k = static_cast<std::size_t>(a.types[j]);
        b.max_arrival[n][k] =
            std::max(b.max_arrival[n][k], b.max_arrival[static_cast<std::size_t>(a.tail)][k] - a.consumption[j]);
      }
    }
  }
  for (std::size_t n = 0; n < n_nodes; ++n) {
    std::vector<char> touches(n_types, 0);
    for (int a : g.out_arcs[n]) {
      for (int k : g.arcs[static_cast<std::size_t>(a)].types) touches[static_cast<std::size_t>(k)] = 1;
    }
    for (int a : g.in_arcs[n]) {
      for (int k : g.arcs[static_cast<std::size_t>(a)].types) touches[static_cast<std::size_t>(k)] = 1;
    }
    for (std::size_t k = 0; k < n_types; ++k) {
      if (touches[k] && std::isinf(b.min_exit[n][k])) b.unreachable.emplace_back(static_cast<int>(n), static_cast<int>(k));
    }
  }
  return b;
}

GraphStats graph_stats(const SchedulingGraph& g) {
  std::map<std::string, int> nodes;
  std::map<std::string, int> arcs;
  for (const auto& n : g.nodes) ++nodes[to_string(n.kind)];
  for (const auto& a : g.arcs) ++arcs[to_string(a.kind)];
  GraphStats s;
  s.node_counts.assign(nodes.begin(), nodes.end());
  s.arc_counts.assign(arcs.begin(), arcs.end());
  return s;
}

void write_graph_stats_csv(const SchedulingGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  const auto s = graph_stats(g);
  out << "class,kind,count\n";
  for (const auto& [k, v] : s.node_counts) out << "node," << k << ',' << v << '\n';
  for (const auto& [k, v] : s.arc_counts) out << "arc," << k << ',' << v << '\n';
  out << "meta,theta," << g.theta << '\n' << "meta,horizon_steps," << g.horizon_steps << '\n';
}

}  // namespace ebsched

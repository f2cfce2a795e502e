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

#ifndef EBSCHED_NETGRAPH_HPP_
#define EBSCHED_NETGRAPH_HPP_

// Time-expanded scheduling digraph: depot, trip and charger-slot timeline
// nodes; connection, pull-out/pull-in, access/egress and recharge arcs.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ebsched/instance.hpp"

namespace ebsched {

enum class NodeKind { kDepotStart, kDepotEnd, kTrip, kCharge, kParking };
enum class ArcKind { kPullOut, kPullIn, kConnection, kAccess, kEgress, kRecharge, kParkIn, kParkOut, kParkWait, kParkEnd };

std::string to_string(NodeKind kind);
std::string to_string(ArcKind kind);

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::kTrip;
  int ref = -1;       // depot, trip or charger index (parking: depot index)
  int timeline = -1;  // charge and parking nodes
  int step = -1;      // time event i in 0..H
  std::int64_t time = 0;
  std::string label;
};

struct Arc {
  int id = 0;
  int tail = 0;
  int head = 0;
  ArcKind kind = ArcKind::kConnection;
  // Admissible plan types; consumption and cost are aligned with this list.
  std::vector<int> types;
  // Relative consumption along the arc and its head node.
  std::vector<double> consumption;
  std::vector<double> cost;

  // Recharge arcs only.
  int timeline = -1;
  int step = -1;  // a(s, i) = (s_{i-1}, s_i), i in 1..H
  bool available = true;
  std::vector<double> omega;        // kW per unit phi, aligned with types
  std::vector<double> energy_cost;  // objective coefficient of phi, aligned with types

  int type_slot(int plan_type) const;  // index into `types` or -1
};

struct Timeline {
  int charger = -1;  // -1 for depot parking timelines
  int depot = -1;
  int slot = 0;
  int grid_point = -1;
  std::vector<int> nodes;  // s_0..s_H
  std::vector<int> arcs;   // arcs[i-1] = a(s, i)
};

struct GraphOptions {
  // Number of timeline nodes an access (egress) arc may reach after
  // (before) the snapped arrival (departure).
  int access_lookahead = 1;
  bool parking_timelines = false;
  // Drop arcs that lie on no depot-to-depot path.
  bool prune = true;
  // Keep trips that lie on no depot-to-depot path instead of failing; the
  // model built from such a graph is infeasible.
  bool allow_unreachable_trips = false;
};

struct SchedulingGraph {
  const Instance* instance = nullptr;
  std::int64_t theta = 0;
  std::int64_t horizon_start = 0;
  int horizon_steps = 0;
  std::vector<PlanType> plan_types;
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  std::vector<Timeline> timelines;
  std::vector<std::vector<int>> out_arcs;
  std::vector<std::vector<int>> in_arcs;
  std::vector<int> trip_node;         // by trip index
  std::vector<int> depot_start_node;  // by depot index
  std::vector<int> depot_end_node;
  // grid_limit[g][i-1] = Omega_i in kW (+inf when unlimited).
  std::vector<std::vector<double>> grid_limit;
  std::vector<int> topological_order;

  std::int64_t time_of_step(int i) const { return horizon_start + theta * i; }
  bool is_acyclic() const;
};

SchedulingGraph build_graph(const Instance& instance, std::int64_t theta,
                            const GraphOptions& options = {});

struct EnergyBounds {
  static constexpr double kNoPath = std::numeric_limits<double>::infinity();
  // [node][plan type]; E is +inf without an exit path, Y is -inf without an
  // entry path.
  std::vector<std::vector<double>> min_exit;     // E_n^k
  std::vector<std::vector<double>> max_arrival;  // Y_n^k
  std::vector<std::pair<int, int>> unreachable;  // (node, plan type) with E = +inf
};

EnergyBounds compute_energy_bounds(const SchedulingGraph& graph);

struct GraphStats {
  std::vector<std::pair<std::string, int>> node_counts;
  std::vector<std::pair<std::string, int>> arc_counts;
};

GraphStats graph_stats(const SchedulingGraph& graph);
void write_graph_stats_csv(const SchedulingGraph& graph, const std::string& path);

// Cost of the leg from -> to for a vehicle type (0 for a zero-length leg).
double leg_cost(const Instance& instance, const std::string& from, const std::string& to,
                const std::string& vehicle_type);

}  // namespace ebsched

#endif  // EBSCHED_NETGRAPH_HPP_

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

#include "ebsched/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

// Coefficient standing in for an infinite exit requirement: larger than any
// soc, so the arc is forced to zero.
constexpr double kNoExitCoefficient = 2.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string padded(int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*d", width, value);
  return buf;
}

const char* row_prefix(RowKind kind) {
  switch (kind) {
    case RowKind::kFlowConservation: return "flow";
    case RowKind::kTripCover: return "cover";
    case RowKind::kOutCapacity: return "cap";
    case RowKind::kMix: return "mix";
    case RowKind::kSocCoupling: return "soc";
    case RowKind::kPullOut: return "pullout";
    case RowKind::kPullInEnergy: return "pullin";
    case RowKind::kEnergyFlow: return "energy";
    case RowKind::kEnergyFlowCharging: return "energyc";
    case RowKind::kIncrementCoupling: return "inccpl";
    case RowKind::kIncrementDomain: return "incdom";
    case RowKind::kGridCapacity: return "grid";
    case RowKind::kStrengthenedLower: return "strlo";
    case RowKind::kStrengthenedUpper: return "strup";
    case RowKind::kPrecondition: return "precond";
  }
  return "row";
}

}  // namespace

std::string to_string(RowKind kind) { return row_prefix(kind); }

void ChargingDomains::add(int charger, const std::string& vehicle_type, IncrementDomainPWL domain) {
  domains_.insert_or_assign({charger, vehicle_type}, std::move(domain));
}

const IncrementDomainPWL* ChargingDomains::find(int charger, const std::string& vehicle_type) const {
  auto it = domains_.find({charger, vehicle_type});
  return it == domains_.end() ? nullptr : &it->second;
}

ChargingDomains build_domains(const Instance& instance, const ProfileCurves& curves, double theta,
                              int segments, EstimatorKind kind) {
  ChargingDomains out;
  for (std::size_t c = 0; c < instance.chargers.size(); ++c) {
    for (const auto& [type, profile] : instance.chargers[c].profiles) {
      out.add(static_cast<int>(c), type, build_estimator(curves.at(profile), theta, segments, kind));
    }
  }
  return out;
}

std::string x_name(int arc, int plan_type) { return "x_" + padded(arc, 6) + "_" + padded(plan_type, 2); }
std::string y_name(int arc) { return "y_" + padded(arc, 6); }
std::string phi_name(int arc, int plan_type) { return "phi_" + padded(arc, 6) + "_" + padded(plan_type, 2); }

int MilpModel::count(RowKind kind) const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [&](const Row& r) { return r.kind == kind; }));
}

int MilpModel::add_variable(Variable v) {
  variables.push_back(std::move(v));
  return static_cast<int>(variables.size()) - 1;
}

int MilpModel::add_row(Row r) {
  r.name = std::string(row_prefix(r.kind)) + "_" + padded(static_cast<int>(rows.size()), 6);
  rows.push_back(std::move(r));
  return static_cast<int>(rows.size()) - 1;
}

std::vector<double> MilpModel::objective_vector() const {
  std::vector<double> c;
  c.reserve(variables.size());
  for (const auto& v : variables) c.push_back(v.objective);
  return c;
}

MilpModel build_model(const SchedulingGraph& g, const ChargingDomains& domains, const BuildOptions& options,
                      const EnergyBounds* bounds) {
  const Instance& inst = *g.instance;
  const auto& K = g.plan_types;
  const std::size_t n_arcs = g.arcs.size();
  EnergyBounds local_bounds;
  if (options.strengthening && bounds == nullptr) {
    local_bounds = compute_energy_bounds(g);
    bounds = &local_bounds;
  }

  MilpModel m;
  m.graph = &g;
  m.x.assign(n_arcs, {});
  m.y.assign(n_arcs, -1);
  m.phi.assign(n_arcs, {});
  m.beta1.assign(n_arcs, {});

  auto electric = [&](int k) { return K[static_cast<std::size_t>(k)].electric; };
  auto domain_for = [&](const Arc& a, int k) -> const IncrementDomainPWL& {
    const auto& tl = g.timelines[static_cast<std::size_t>(a.timeline)];
    const auto* d = domains.find(tl.charger, K[static_cast<std::size_t>(k)].vehicle_type);
    if (d == nullptr) {
      throw BuildError("no increment domain for charger '" + inst.chargers[static_cast<std::size_t>(tl.charger)].id +
                       "' and vehicle type '" + K[static_cast<std::size_t>(k)].vehicle_type + "'");
    }
    if (std::abs(d->theta() - static_cast<double>(g.theta)) > 1e-9) {
      throw BuildError("increment domain step does not match the graph step");
    }
    return *d;
  };

  // Variables, arc by arc.
  for (const auto& a : g.arcs) {
    const auto ai = static_cast<std::size_t>(a.id);
    bool has_electric = false;
    for (std::size_t j = 0; j < a.types.size(); ++j) {
      m.x[ai].push_back(m.add_variable({x_name(a.id, a.types[j]), VarType::kBinary, 0.0, 1.0, a.cost[j]}));
      has_electric = has_electric || electric(a.types[j]);
    }
    if (has_electric) m.y[ai] = m.add_variable({y_name(a.id), VarType::kContinuous, 0.0, kInf, 0.0});
    if (a.kind == ArcKind::kRecharge) {
      m.phi[ai].assign(a.types.size(), -1);
      m.beta1[ai].assign(a.types.size(), 0.0);
      for (std::size_t j = 0; j < a.types.size(); ++j) {
        if (!electric(a.types[j])) continue;
        const auto& d = domain_for(a, a.types[j]);
        m.beta1[ai][j] = d.segments().front().offset;
        m.phi[ai][j] = m.add_variable({phi_name(a.id, a.types[j]), VarType::kContinuous, 0.0,
                                       a.available ? kInf : 0.0, a.energy_cost[j]});
      }
    }
  }

  // Flow conservation per non-depot node and plan type.
  for (const auto& n : g.nodes) {
    if (n.kind == NodeKind::kDepotStart || n.kind == NodeKind::kDepotEnd) continue;
    const auto ni = static_cast<std::size_t>(n.id);
    std::set<int> types;
    for (int a : g.in_arcs[ni]) types.insert(g.arcs[static_cast<std::size_t>(a)].types.begin(), g.arcs[static_cast<std::size_t>(a)].types.end());
    for (int a : g.out_arcs[ni]) types.insert(g.arcs[static_cast<std::size_t>(a)].types.begin(), g.arcs[static_cast<std::size_t>(a)].types.end());
    for (int k : types) {
      Row r;
      r.kind = RowKind::kFlowConservation;
      for (int a : g.in_arcs[ni]) {
        const int j = g.arcs[static_cast<std::size_t>(a)].type_slot(k);
        if (j >= 0) r.terms.emplace_back(m.x[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)], 1.0);
      }
      for (int a : g.out_arcs[ni]) {
        const int j = g.arcs[static_cast<std::size_t>(a)].type_slot(k);
        if (j >= 0) r.terms.emplace_back(m.x[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)], -1.0);
      }
      r.sense = RowSense::kEq;
      m.add_row(std::move(r));
    }
  }

  // Every trip served exactly once.
  for (int tn : g.trip_node) {
    Row r;
    r.kind = RowKind::kTripCover;
    for (int a : g.out_arcs[static_cast<std::size_t>(tn)]) {
      for (int v : m.x[static_cast<std::size_t>(a)]) r.terms.emplace_back(v, 1.0);
    }
    r.sense = RowSense::kEq;
    r.rhs = 1.0;
    m.add_row(std::move(r));
  }

  // At most one vehicle per charge timeline node.
  for (const auto& n : g.nodes) {
    if (n.kind != NodeKind::kCharge) continue;
    const auto& out = g.out_arcs[static_cast<std::size_t>(n.id)];
    if (out.empty()) continue;
    Row r;
    r.kind = RowKind::kOutCapacity;
    for (int a : out) {
      for (int v : m.x[static_cast<std::size_t>(a)]) r.terms.emplace_back(v, 1.0);
    }
    r.sense = RowSense::kLe;
    r.rhs = 1.0;
    m.add_row(std::move(r));
  }

  if (options.mix) {
    for (const auto& mc : inst.mix_constraints) {
      Row base;
      base.kind = RowKind::kMix;
      for (const auto& term : mc.terms) {
        for (std::size_t d = 0; d < inst.depots.size(); ++d) {
          if (inst.depots[d].id != term.depot) continue;
          for (int a : g.out_arcs[static_cast<std::size_t>(g.depot_start_node[d])]) {
            const auto& arc = g.arcs[static_cast<std::size_t>(a)];
            for (std::size_t j = 0; j < arc.types.size(); ++j) {
              if (K[static_cast<std::size_t>(arc.types[j])].vehicle_type == term.vehicle_type) {
                base.terms.emplace_back(m.x[static_cast<std::size_t>(a)][j], term.coefficient);
              }
            }
          }
        }
      }
      if (mc.lower && mc.upper && *mc.lower == *mc.upper) {
        Row r = base;
        r.sense = RowSense::kEq;
        r.rhs = *mc.lower;
        m.add_row(std::move(r));
        continue;
      }
      if (mc.lower) {
        Row r = base;
        r.sense = RowSense::kGe;
        r.rhs = *mc.lower;
        m.add_row(std::move(r));
      }
      if (mc.upper) {
        Row r = base;
        r.sense = RowSense::kLe;
        r.rhs = *mc.upper;
        m.add_row(std::move(r));
      }
    }
  }

  // Soc variables: full at pull-out, coupled to flow elsewhere.
  for (const auto& a : g.arcs) {
    const auto ai = static_cast<std::size_t>(a.id);
    const int y = m.y[ai];
    if (y < 0) continue;
    const bool pull_out = a.kind == ArcKind::kPullOut;
    if (pull_out || !options.strengthening) {
      Row r;
      r.kind = pull_out ? RowKind::kPullOut : RowKind::kSocCoupling;
      for (std::size_t j = 0; j < a.types.size(); ++j) {
        if (electric(a.types[j])) r.terms.emplace_back(m.x[ai][j], 1.0);
      }
      r.terms.emplace_back(y, -1.0);
      r.sense = pull_out ? RowSense::kEq : RowSense::kGe;
      m.add_row(std::move(r));
      if (!pull_out && g.nodes[static_cast<std::size_t>(a.head)].kind == NodeKind::kDepotEnd) {
        // The energy flow stops at depot end nodes, so the last leg needs its own row.
        Row in;
        in.kind = RowKind::kPullInEnergy;
        for (std::size_t j = 0; j < a.types.size(); ++j) {
          if (electric(a.types[j]) && a.consumption[j] != 0.0) in.terms.emplace_back(m.x[ai][j], a.consumption[j]);
        }
        if (!in.terms.empty()) {
          in.terms.emplace_back(y, -1.0);
          in.sense = RowSense::kLe;
          m.add_row(std::move(in));
        }
      }
      continue;
    }
    Row lo;
    lo.kind = RowKind::kStrengthenedLower;
    Row hi;
    hi.kind = RowKind::kStrengthenedUpper;
    hi.terms.emplace_back(y, 1.0);
    for (std::size_t j = 0; j < a.types.size(); ++j) {
      const int k = a.types[j];
      if (!electric(k)) continue;
      const auto ku = static_cast<std::size_t>(k);
      const double exit = bounds->min_exit[static_cast<std::size_t>(a.head)][ku];
      const double need = std::isinf(exit) ? kNoExitCoefficient : std::min(a.consumption[j] + exit, kNoExitCoefficient);
      const double reach = std::clamp(bounds->max_arrival[static_cast<std::size_t>(a.tail)][ku], -1.0, 1.0);
      lo.terms.emplace_back(m.x[ai][j], need);
      hi.terms.emplace_back(m.x[ai][j], -reach);
    }
    lo.terms.emplace_back(y, -1.0);
    lo.sense = RowSense::kLe;
    hi.sense = RowSense::kLe;
    m.add_row(std::move(lo));
    m.add_row(std::move(hi));
  }

  // Energy flow through trip, parking and initial timeline nodes; charge
  // nodes add the increment of the recharge arc entering them.
  for (const auto& n : g.nodes) {
    if (n.kind == NodeKind::kDepotStart || n.kind == NodeKind::kDepotEnd) continue;
    const auto ni = static_cast<std::size_t>(n.id);
    Row r;
    r.kind = RowKind::kEnergyFlow;
    bool any = false;
    for (int a : g.in_arcs[ni]) {
      const auto ai = static_cast<std::size_t>(a);
      const auto& arc = g.arcs[ai];
      if (m.y[ai] < 0) continue;
      any = true;
      for (std::size_t j = 0; j < arc.types.size(); ++j) {
        if (electric(arc.types[j]) && arc.consumption[j] != 0.0) r.terms.emplace_back(m.x[ai][j], arc.consumption[j]);
      }
      r.terms.emplace_back(m.y[ai], -1.0);
      if (arc.kind == ArcKind::kRecharge && n.kind == NodeKind::kCharge) {
        r.kind = RowKind::kEnergyFlowCharging;
        for (int v : m.phi[ai]) {
          if (v >= 0) r.terms.emplace_back(v, -1.0);
        }
      }
    }
    for (int a : g.out_arcs[ni]) {
      const auto ai = static_cast<std::size_t>(a);
      if (m.y[ai] < 0) continue;
      any = true;
      r.terms.emplace_back(m.y[ai], 1.0);
    }
    if (!any) continue;
    if (n.kind == NodeKind::kCharge && n.step >= 1) r.kind = RowKind::kEnergyFlowCharging;
    r.sense = RowSense::kEq;
    m.add_row(std::move(r));
  }

  // Increment coupling and domain.
  for (const auto& a : g.arcs) {
    if (a.kind != ArcKind::kRecharge) continue;
    const auto ai = static_cast<std::size_t>(a.id);
    for (std::size_t j = 0; j < a.types.size(); ++j) {
      const int phi = m.phi[ai][j];
      if (phi < 0) continue;
      const auto& d = domain_for(a, a.types[j]);
      Row c;
      c.kind = RowKind::kIncrementCoupling;
      c.terms = {{m.x[ai][j], d.segments().front().offset}, {phi, -1.0}};
      c.sense = RowSense::kGe;
      m.add_row(std::move(c));
      if (options.linear_charging) continue;
      for (std::size_t s = 1; s < d.segments().size(); ++s) {
        Row r;
        r.kind = RowKind::kIncrementDomain;
        r.terms = {{phi, 1.0}, {m.y[ai], -d.segments()[s].slope}};
        r.sense = RowSense::kLe;
        r.rhs = d.segments()[s].offset;
        m.add_row(std::move(r));
      }
    }
  }

  // Grid capacity per access point and step.
  if (options.grid_caps) {
    for (std::size_t gp = 0; gp < inst.grid_points.size(); ++gp) {
      auto override_it = options.grid_cap_override_kw.find(inst.grid_points[gp].id);
      for (int i = 1; i <= g.horizon_steps; ++i) {
        double limit = g.grid_limit[gp][static_cast<std::size_t>(i - 1)];
        if (override_it != options.grid_cap_override_kw.end()) limit = std::min(limit, override_it->second);
        if (std::isinf(limit)) continue;
        Row r;
        r.kind = RowKind::kGridCapacity;
        r.grid_point = static_cast<int>(gp);
        r.step = i;
        for (const auto& tl : g.timelines) {
          if (tl.charger < 0 || tl.grid_point != static_cast<int>(gp)) continue;
          if (tl.arcs.size() < static_cast<std::size_t>(i)) continue;
          const auto ai = static_cast<std::size_t>(tl.arcs[static_cast<std::size_t>(i - 1)]);
          const auto& arc = g.arcs[ai];
          for (std::size_t j = 0; j < arc.types.size(); ++j) {
            if (m.phi[ai][j] >= 0) r.terms.emplace_back(m.phi[ai][j], arc.omega[j]);
          }
        }
        if (r.terms.empty()) continue;
        r.sense = RowSense::kLe;
        r.rhs = limit;
        m.add_row(std::move(r));
      }
    }
  }

  if (options.precondition_lead > 0) add_preconditioning(m, options.precondition_lead);
  return m;
}

int add_preconditioning(MilpModel& m, int lead) {
  if (lead < 1) throw InvalidInput("lead_steps must be at least 1");
  const auto& g = *m.graph;
  int added = 0;
  for (const auto& tl : g.timelines) {
    if (tl.charger < 0) continue;
    for (std::size_t idx = 0; idx < tl.arcs.size(); ++idx) {
      if (static_cast<int>(idx) - lead < 0) continue;
      const auto ai = static_cast<std::size_t>(tl.arcs[idx]);
      const auto prev = static_cast<std::size_t>(tl.arcs[idx - static_cast<std::size_t>(lead)]);
      const auto& arc = g.arcs[ai];
      for (std::size_t j = 0; j < arc.types.size(); ++j) {
        if (m.phi[ai][j] < 0) continue;
        const int pj = g.arcs[prev].type_slot(arc.types[j]);
        if (pj < 0) continue;
        Row r;
        r.kind = RowKind::kPrecondition;
        r.terms = {{m.x[prev][static_cast<std::size_t>(pj)], m.beta1[ai][j]}, {m.phi[ai][j], -1.0}};
        r.sense = RowSense::kGe;
        m.add_row(std::move(r));
        ++added;
      }
    }
  }
  return added;
}

}  // namespace ebsched

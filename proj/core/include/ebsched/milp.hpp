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

#ifndef EBSCHED_MILP_HPP_
#define EBSCHED_MILP_HPP_

// Mixed-integer program over a SchedulingGraph: binary multi-commodity flow
// with an energy flow and a linearized charge increment domain per
// recharge arc.

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ebsched/chargemodel.hpp"
#include "ebsched/instance.hpp"
#include "ebsched/netgraph.hpp"

namespace ebsched {

// Increment domains per (charger index, vehicle type).
class ChargingDomains {
 public:
  void add(int charger, const std::string& vehicle_type, IncrementDomainPWL domain);
  const IncrementDomainPWL* find(int charger, const std::string& vehicle_type) const;
  std::size_t size() const { return domains_.size(); }
  const std::map<std::pair<int, std::string>, IncrementDomainPWL>& all() const { return domains_; }

 private:
  std::map<std::pair<int, std::string>, IncrementDomainPWL> domains_;
};

ChargingDomains build_domains(const Instance& instance, const ProfileCurves& curves, double theta,
                              int segments, EstimatorKind kind);

enum class VarType { kBinary, kContinuous };
enum class RowSense { kLe, kGe, kEq };
enum class RowKind {
  kFlowConservation,
  kTripCover,
  kOutCapacity,
  kMix,
  kSocCoupling,
  kPullOut,
  kPullInEnergy,
  kEnergyFlow,
  kEnergyFlowCharging,
  kIncrementCoupling,
  kIncrementDomain,
  kGridCapacity,
  kStrengthenedLower,
  kStrengthenedUpper,
  kPrecondition,
};

std::string to_string(RowKind kind);

struct Variable {
  std::string name;
  VarType type = VarType::kContinuous;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double objective = 0.0;
};

struct Row {
  std::string name;
  RowKind kind = RowKind::kFlowConservation;
  std::vector<std::pair<int, double>> terms;
  RowSense sense = RowSense::kEq;
  double rhs = 0.0;
  // Grid rows: (grid point, step); other rows leave these at -1.
  int grid_point = -1;
  int step = -1;
};

struct BuildOptions {
  bool strengthening = false;
  bool grid_caps = true;
  bool mix = true;
  // 0 disables; otherwise the lead passed to add_preconditioning.
  int precondition_lead = 0;
  // Drop the increment-domain rows, keeping only phi <= beta_1 x
  // (charging at the CC rate regardless of soc).
  bool linear_charging = false;
  // Replaces Omega_i of a grid point (kW) at every step.
  std::map<std::string, double> grid_cap_override_kw;
};

struct MilpModel {
  std::vector<Variable> variables;
  std::vector<Row> rows;

  // Index maps into `variables`, -1 when absent.
  std::vector<std::vector<int>> x;  // [arc][type slot]
  std::vector<int> y;               // [arc]
  std::vector<std::vector<int>> phi;  // [arc][type slot]
  // beta_1 per recharge arc and type slot (for preconditioning).
  std::vector<std::vector<double>> beta1;
  const SchedulingGraph* graph = nullptr;

  int count(RowKind kind) const;
  int add_variable(Variable v);
  int add_row(Row r);
  std::vector<double> objective_vector() const;
};

// Canonical names: x_000012_03, y_000012, phi_000012_03.
std::string x_name(int arc, int plan_type);
std::string y_name(int arc);
std::string phi_name(int arc, int plan_type);

MilpModel build_model(const SchedulingGraph& graph, const ChargingDomains& domains,
                      const BuildOptions& options = {}, const EnergyBounds* bounds = nullptr);

// Adds beta_1 x_{a(s, i - lead)} >= phi_{a(s, i)}; arcs with i - lead < 1 are
// skipped. Returns the number of rows added.
int add_preconditioning(MilpModel& model, int lead_steps);

enum class ModelFormat { kLp, kMps };

// Byte-deterministic emission. `relax` drops integrality.
void emit_model(const MilpModel& model, ModelFormat format, const std::string& path, bool relax = false);
std::string emit_model_string(const MilpModel& model, ModelFormat format, bool relax = false);
ModelFormat model_format_from_path(const std::string& path);

}  // namespace ebsched

#endif  // EBSCHED_MILP_HPP_

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

#include "ebsched/validate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <thread>

#include <nlohmann/json.hpp>

#include "ebsched/error.hpp"
#include "ebsched/netgraph.hpp"

namespace ebsched {
namespace {

using Json = nlohmann::ordered_json;

double leg_consumption(const Instance& inst, const std::string& from, const std::string& to,
                       const std::string& vtype, const std::string& course) {
  if (const Deadhead* d = inst.deadhead(from, to)) {
    auto it = d->consumption.find(vtype);
    if (it == d->consumption.end()) {
      throw StructureError("course '" + course + "': vehicle type '" + vtype + "' cannot drive " + from + " -> " + to);
    }
    return it->second;
  }
  if (from == to) return 0.0;
  throw StructureError("course '" + course + "': no deadhead " + from + " -> " + to);
}

// Approximate domains and their operator gaps, shared by all courses.
struct DomainCache {
  std::map<std::string, std::unique_ptr<IncrementDomainPWL>> domains;
  std::map<std::string, double> gaps;
};

struct CourseContext {
  const Instance* inst;
  const Schedule* schedule;
  const ValidationOptions* options;
  const ProfileCurves* curves;
  const DomainCache* cache;
  const SchedulingGraph* graph;
  const EnergyBounds* bounds;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void validate_course(const CourseContext& ctx, const Course& c, CourseReport& out,
                     std::vector<Violation>& violations) {
  const Instance& inst = *ctx.inst;
  const auto& opt = *ctx.options;
  const auto& vt = inst.vehicle_type(c.vehicle_type);
  out.course = c.id;
  out.vehicle_type = c.vehicle_type;
  out.electric = vt.electric;
  if (!vt.electric) return;

  int plan_type = -1;
  for (const auto& k : ctx.graph->plan_types) {
    if (k.vehicle_type == c.vehicle_type && k.depot == c.depot) plan_type = k.index;
  }
  if (plan_type < 0) {
    throw StructureError("course '" + c.id + "': vehicle type '" + c.vehicle_type + "' is not stationed at '" +
                         c.depot + "'");
  }
  const auto ku = static_cast<std::size_t>(plan_type);
  auto exit_energy = [&](const std::string& trip_id) {
    for (std::size_t t = 0; t < inst.trips.size(); ++t) {
      if (inst.trips[t].id == trip_id) {
        return ctx.bounds->min_exit[static_cast<std::size_t>(ctx.graph->trip_node[t])][ku];
      }
    }
    return EnergyBounds::kNoPath;
  };

  CourseTrace& tr = out.trace;
  std::vector<double> need;
  std::vector<std::unique_ptr<IncrementOperator>> owned;
  std::vector<const IncrementOperator*> exact_ops, approx_ops;
  std::vector<const MaxPowerCurve*> event_curves;
  std::vector<const ChargeEvent*> events;

  std::string loc = c.depot;
  double pending = 0.0;
  tr.add(CourseRole::kDepotStart, c.depot, 0.0);
  need.push_back(0.0);
  for (const auto& item : c.items) {
    switch (item.kind) {
      case CourseItem::Kind::kTrip: {
        const auto& t = inst.trip(item.trip);
        auto it = t.consumption.find(c.vehicle_type);
        if (it == t.consumption.end()) {
          throw StructureError("course '" + c.id + "': vehicle type '" + c.vehicle_type + "' cannot serve trip '" +
                               t.id + "'");
        }
        const double exit = exit_energy(t.id);
        tr.add(CourseRole::kTripStart, t.id, pending + leg_consumption(inst, loc, t.start_location, c.vehicle_type, c.id));
        need.push_back(it->second + exit);
        tr.add(CourseRole::kTripEnd, t.id, it->second);
        need.push_back(exit);
        pending = 0.0;
        loc = t.end_location;
        break;
      }
      case CourseItem::Kind::kCharge: {
        const auto& e = item.charge;
        const auto& ch = inst.charger(e.charger);
        if (!ch.profiles.count(c.vehicle_type)) {
          throw StructureError("course '" + c.id + "': vehicle type '" + c.vehicle_type + "' cannot charge at '" +
                               ch.id + "'");
        }
        tr.add(CourseRole::kChargeArrival, ch.id, pending + leg_consumption(inst, loc, ch.location, c.vehicle_type, c.id));
        need.push_back(0.0);
        const double window = static_cast<double>(e.end - e.start);
        const double steps = ctx.schedule->theta > 0 ? std::round(window / static_cast<double>(ctx.schedule->theta)) : 0.0;
        tr.add(CourseRole::kChargeDeparture, ch.id, ch.arc_consumption * steps);
        need.push_back(0.0);
        tr.charge_windows.push_back(window);
        pending = 0.0;
        loc = ch.location;

        const std::string& profile = ch.profiles.at(c.vehicle_type);
        const MaxPowerCurve& curve = ctx.curves->at(profile);
        owned.push_back(std::make_unique<ExactIncrement>(curve));
        exact_ops.push_back(owned.back().get());
        if (opt.mode == ValidationMode::kExact) {
          approx_ops.push_back(owned.back().get());
        } else {
          const auto& domain = *ctx.cache->domains.at(profile);
          owned.push_back(std::make_unique<DomainIncrement>(domain));
          approx_ops.push_back(owned.back().get());
          out.sup_gap = std::max(out.sup_gap, ctx.cache->gaps.at(profile));
        }
        event_curves.push_back(&curve);
        events.push_back(&e);
        break;
      }
      case CourseItem::Kind::kPark:
        pending += leg_consumption(inst, loc, item.park.depot, c.vehicle_type, c.id);
        loc = item.park.depot;
        break;
    }
  }
  tr.add(CourseRole::kDepotEnd, c.depot, pending + leg_consumption(inst, loc, c.depot, c.vehicle_type, c.id));
  need.push_back(0.0);

  if (exact_ops.empty()) {
    // No charge event: any curve serves, none is consulted.
    static const MaxPowerCurve unused = solve_max_power_curve(ChargingPowerProfile::Constant(1.0));
    propagate_course(tr, unused);
  } else {
    propagate_course(tr, exact_ops, approx_ops);
  }

  out.required.resize(need.size());
  for (std::size_t j = 0; j < need.size(); ++j) out.required[j] = std::max(need[j], opt.soc_floor);

  for (std::size_t j = 0; j < tr.elements.size(); ++j) {
    const double req = out.required[j];
    if (out.first_exact_violation < 0 && tr.soc_exact[j] < req - opt.tolerance) {
      out.first_exact_violation = static_cast<int>(j);
      violations.push_back({c.id, "energy", static_cast<int>(j),
                            tr.elements[j].label + ": soc " + fmt(tr.soc_exact[j]) + " below required " +
                                fmt(req)});
    }
    if (out.first_approx_violation < 0 && tr.soc_approx[j] < req - opt.tolerance) {
      out.first_approx_violation = static_cast<int>(j);
      if (opt.mode != ValidationMode::kExact) {
        violations.push_back({c.id, "approx-energy", static_cast<int>(j),
                              tr.elements[j].label + ": approximate soc " + fmt(tr.soc_approx[j]) +
                                  " below required " + fmt(req)});
      }
    }
    const double eps = tr.eps[j];
    out.max_abs_eps = std::max(out.max_abs_eps, std::abs(eps));
    if (std::abs(eps) > tr.sigma[j] * out.sup_gap + 1e-6) out.eps_bound_holds = false;
    if (opt.mode == ValidationMode::kApproxUnder && eps > opt.tolerance) out.eps_sign_consistent = false;
    if (opt.mode == ValidationMode::kApproxOver && eps < -opt.tolerance) out.eps_sign_consistent = false;
  }
  out.energy_feasible = out.first_exact_violation < 0;
  out.weakly_feasible = out.first_approx_violation < 0;
  out.strongly_feasible = out.energy_feasible && out.weakly_feasible;

  // Planned increments must be reachable under the exact curve.
  std::size_t event = 0;
  double y = 1.0;
  for (std::size_t j = 1; j < tr.elements.size(); ++j) {
    if (tr.elements[j].role == CourseRole::kChargeDeparture) {
      const ChargeEvent& e = *events[event];
      const MaxPowerCurve& curve = *event_curves[event];
      for (std::size_t i = 0; i < e.phi.size(); ++i) {
        const double cap = charge_increment(curve, y, static_cast<double>(ctx.schedule->theta));
        if (e.phi[i] > cap + 1e-6) {
          violations.push_back({c.id, "phi-inadmissible", static_cast<int>(j),
                                e.charger + " step " + std::to_string(e.first_step + static_cast<int>(i) + 1) +
                                    ": phi " + fmt(e.phi[i]) + " exceeds " + fmt(cap)});
        }
        y += e.phi[i];
      }
      ++event;
    }
    y -= tr.consumptions[j];
  }
}

}  // namespace

std::string to_string(ValidationMode mode) {
  switch (mode) {
    case ValidationMode::kExact: return "exact";
    case ValidationMode::kApproxUnder: return "approx-under";
    case ValidationMode::kApproxOver: return "approx-over";
  }
  return "exact";
}

ValidationMode validation_mode_from_string(const std::string& name) {
  if (name == "exact") return ValidationMode::kExact;
  if (name == "approx-under" || name == "under") return ValidationMode::kApproxUnder;
  if (name == "approx-over" || name == "over") return ValidationMode::kApproxOver;
  throw InvalidInput("unknown validation mode '" + name + "'");
}

double GridLoad::peak(std::size_t g) const {
  return load[g].empty() ? 0.0 : *std::max_element(load[g].begin(), load[g].end());
}

int GridLoad::peak_step(std::size_t g) const {
  if (peak(g) <= 0.0) return 0;
  return static_cast<int>(std::max_element(load[g].begin(), load[g].end()) - load[g].begin()) + 1;
}

std::vector<double> GridLoad::total() const {
  std::vector<double> sum(load.empty() ? 0 : load.front().size(), 0.0);
  for (const auto& series : load) {
    for (std::size_t i = 0; i < series.size(); ++i) sum[i] += series[i];
  }
  return sum;
}

double GridLoad::total_peak() const {
  const auto t = total();
  return t.empty() ? 0.0 : *std::max_element(t.begin(), t.end());
}

bool ValidationReport::energy_feasible() const {
  return std::all_of(courses.begin(), courses.end(), [](const CourseReport& c) { return c.energy_feasible; });
}
bool ValidationReport::weakly_feasible() const {
  return std::all_of(courses.begin(), courses.end(), [](const CourseReport& c) { return c.weakly_feasible; });
}
bool ValidationReport::strongly_feasible() const {
  return std::all_of(courses.begin(), courses.end(), [](const CourseReport& c) { return c.strongly_feasible; });
}

GridLoad grid_load_profile(const Instance& inst, const Schedule& s) {
  if (s.theta <= 0) throw InvalidInput("schedule has no time step");
  GridLoad out;
  out.theta = s.theta;
  out.start = inst.horizon.start;
  const auto H = static_cast<std::size_t>((inst.horizon.end - inst.horizon.start) / s.theta);
  std::map<std::string, std::size_t> index;
  for (const auto& g : inst.grid_points) {
    index[g.id] = out.grid_points.size();
    out.grid_points.push_back(g.id);
  }
  out.load.assign(out.grid_points.size(), std::vector<double>(H, 0.0));
  for (const auto& c : s.courses) {
    const double battery = inst.vehicle_type(c.vehicle_type).battery_kwh;
    const double omega = battery * 3600.0 / static_cast<double>(s.theta);
    for (const auto& item : c.items) {
      if (item.kind != CourseItem::Kind::kCharge) continue;
      const auto& e = item.charge;
      const std::size_t g = index.at(inst.charger(e.charger).grid_point);
      const std::int64_t first = (e.start - inst.horizon.start) / s.theta;
      for (std::size_t i = 0; i < e.phi.size(); ++i) {
        const std::int64_t step = first + static_cast<std::int64_t>(i);
        if (step < 0 || static_cast<std::size_t>(step) >= H) continue;
        out.load[g][static_cast<std::size_t>(step)] += omega * e.phi[i];
      }
    }
  }
  return out;
}

void write_grid_load_csv(const GridLoad& load, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "grid_point,step,load\n";
  for (std::size_t g = 0; g < load.grid_points.size(); ++g) {
    for (std::size_t i = 0; i < load.load[g].size(); ++i) {
      out << load.grid_points[g] << ',' << i + 1 << ',' << fmt(load.load[g][i]) << '\n';
    }
  }
}

ValidationReport validate_schedule(const Instance& inst, const Schedule& s, const ValidationOptions& opt) {
  check_schedule_structure(inst, s);
  if (s.theta <= 0) throw InvalidInput("schedule has no time step");

  ValidationReport report;
  report.mode = opt.mode;
  report.theta = s.theta;
  const std::int64_t approx_theta = opt.approx_theta.value_or(s.theta);
  if (approx_theta <= 0) throw InvalidInput("approximation step must be positive");
  report.segments = opt.mode == ValidationMode::kExact ? 0 : opt.segments;
  report.reported_objective = s.objective;
  report.fleet_size = static_cast<int>(s.courses.size());
  report.objective = schedule_cost(inst, s);
  report.grid = grid_load_profile(inst, s);

  const ProfileCurves curves(inst, opt.curve_options);
  DomainCache cache;
  if (opt.mode != ValidationMode::kExact) {
    const EstimatorKind kind = opt.mode == ValidationMode::kApproxUnder ? EstimatorKind::kUnder : EstimatorKind::kOver;
    for (const auto& p : inst.profiles) {
      auto d = std::make_unique<IncrementDomainPWL>(
          build_estimator(curves.at(p.id), static_cast<double>(approx_theta), opt.segments, kind));
      cache.gaps[p.id] = operator_sup_gap(curves.at(p.id), *d);
      cache.domains[p.id] = std::move(d);
    }
  }
  GraphOptions gopt;
  gopt.allow_unreachable_trips = true;
  const SchedulingGraph graph = build_graph(inst, s.theta, gopt);
  const EnergyBounds bounds = compute_energy_bounds(graph);
  const CourseContext ctx{&inst, &s, &opt, &curves, &cache, &graph, &bounds};

  const std::size_t n = s.courses.size();
  report.courses.resize(n);
  std::vector<std::vector<Violation>> found(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        validate_course(ctx, s.courses[i], report.courses[i], found[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int width = std::clamp(opt.threads, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < width; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    report.violations.insert(report.violations.end(), found[i].begin(), found[i].end());
  }
  return report;
}

std::string report_to_json(const ValidationReport& r) {
  Json doc = Json::object();
  doc["mode"] = to_string(r.mode);
  doc["theta"] = r.theta;
  doc["segments"] = r.segments;
  doc["energy_feasible"] = r.energy_feasible();
  doc["weakly_feasible"] = r.weakly_feasible();
  doc["strongly_feasible"] = r.strongly_feasible();
  doc["fleet_size"] = r.fleet_size;
  doc["objective"] = r.objective;
  doc["reported_objective"] = r.reported_objective ? Json(*r.reported_objective) : Json(nullptr);
  Json courses = Json::array();
  for (const auto& c : r.courses) {
    Json jc = {{"course", c.course},
               {"vehicle_type", c.vehicle_type},
               {"electric", c.electric},
               {"energy_feasible", c.energy_feasible},
               {"weakly_feasible", c.weakly_feasible},
               {"strongly_feasible", c.strongly_feasible},
               {"first_exact_violation", c.first_exact_violation},
               {"first_approx_violation", c.first_approx_violation},
               {"recharge_events", c.trace.recharge_events()},
               {"max_abs_eps", c.max_abs_eps},
               {"sup_gap", c.sup_gap},
               {"eps_bound_holds", c.eps_bound_holds},
               {"eps_sign_consistent", c.eps_sign_consistent}};
    if (!c.trace.soc_exact.empty()) jc["min_soc_exact"] = *std::min_element(c.trace.soc_exact.begin(), c.trace.soc_exact.end());
    courses.push_back(jc);
  }
  doc["courses"] = courses;
  Json grid = Json::array();
  for (std::size_t g = 0; g < r.grid.grid_points.size(); ++g) {
    grid.push_back({{"grid_point", r.grid.grid_points[g]}, {"peak_kw", r.grid.peak(g)}, {"peak_step", r.grid.peak_step(g)}});
  }
  doc["grid"] = grid;
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"course", v.course}, {"kind", v.kind}, {"element", v.element}, {"detail", v.detail}});
  }
  doc["violations"] = violations;
  return doc.dump(1) + "\n";
}

void write_trace_csv(const ValidationReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "course,element,role,label,consumption,required,soc_exact,soc_approx,eps,sigma\n";
  for (const auto& c : r.courses) {
    const auto& t = c.trace;
    for (std::size_t j = 0; j < t.elements.size(); ++j) {
      out << c.course << ',' << j << ',' << to_string(t.elements[j].role) << ',' << t.elements[j].label << ','
          << fmt(t.consumptions[j]) << ',' << fmt(c.required[j]) << ',' << fmt(t.soc_exact[j]) << ','
          << fmt(t.soc_approx[j]) << ',' << fmt(t.eps[j]) << ',' << t.sigma[j] << '\n';
    }
  }
}

PeakShaveReport peak_shave_report(const Instance& inst, const std::map<double, Schedule>& schedules,
                                  double tolerance) {
  auto ref_it = std::find_if(schedules.begin(), schedules.end(),
                             [](const auto& kv) { return std::abs(kv.first - 1.0) < 1e-12; });
  if (ref_it == schedules.end()) throw InvalidInput("peak shaving report needs the reference cap 1.0");
  const GridLoad ref_load = grid_load_profile(inst, ref_it->second);
  PeakShaveReport report;
  report.reference_peak_kw = ref_load.total_peak();
  report.reference_objective = schedule_cost(inst, ref_it->second);

  for (auto it = schedules.rbegin(); it != schedules.rend(); ++it) {
    const GridLoad load = grid_load_profile(inst, it->second);
    PeakShaveRow row;
    row.cap_fraction = it->first;
    row.objective = schedule_cost(inst, it->second);
    row.normalized_objective = report.reference_objective != 0.0 ? row.objective / report.reference_objective : 1.0;
    row.fleet_size = static_cast<int>(it->second.courses.size());
    row.peak_kw = load.total_peak();
    row.normalized_peak = report.reference_peak_kw > 0.0 ? row.peak_kw / report.reference_peak_kw : 0.0;
    for (std::size_t g = 0; g < load.grid_points.size(); ++g) {
      const double ref = ref_load.peak(g);
      if (load.peak(g) > row.cap_fraction * ref + tolerance * std::max(1.0, ref)) row.cap_respected = false;
    }
    row.histogram.assign(11, 0);
    if (report.reference_peak_kw > 0.0) {
      for (double v : load.total()) {
        const double rel = v / report.reference_peak_kw;
        row.histogram[static_cast<std::size_t>(std::clamp(std::floor(rel * 10.0 + 1e-9), 0.0, 10.0))]++;
      }
    }
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      const double slack = tolerance * std::max(1.0, std::abs(report.reference_objective));
      if (row.objective < prev.objective - slack) report.objective_monotone = false;
      if (row.peak_kw > prev.peak_kw + tolerance * std::max(1.0, report.reference_peak_kw)) {
        report.peak_monotone = false;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_peak_shave_csv(const PeakShaveReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "cap,objective,normalized_objective,fleet,peak_kw,normalized_peak,cap_respected";
  for (int b = 0; b < 11; ++b) out << ",bin" << b;
  out << '\n';
  for (const auto& row : r.rows) {
    out << fmt(row.cap_fraction) << ',' << fmt(row.objective) << ',' << fmt(row.normalized_objective) << ','
        << row.fleet_size << ',' << fmt(row.peak_kw) << ',' << fmt(row.normalized_peak) << ','
        << (row.cap_respected ? 1 : 0);
    for (int h : row.histogram) out << ',' << h;
    out << '\n';
  }
}

}  // namespace ebsched

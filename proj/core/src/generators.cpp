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

#include "ebsched/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

std::int64_t align_up(double t, std::int64_t step) {
  return static_cast<std::int64_t>(std::ceil(t / static_cast<double>(step) - 1e-9)) * step;
}

std::string num_str(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

ChargingPowerProfile make_profile(CvShape shape, double cc, double yv) {
  switch (shape) {
    case CvShape::kLinear: return ChargingPowerProfile::Linear(cc, yv);
    case CvShape::kQuadratic: return ChargingPowerProfile::Quadratic(cc, yv);
    case CvShape::kConstant: return ChargingPowerProfile::Constant(cc);
    case CvShape::kTabulated: break;
  }
  throw GenerationError("worst-case generator supports constant, linear and quadratic profiles");
}

}  // namespace

Instance generate_worst_case(const WorstCaseParams& p) {
  if (p.n < 2) {
    throw GenerationError(
        "n must be at least 2: the chain needs one recharge station between two trips "
        "(n trips, n-1 stations, n-1 depots)");
  }
  if (!(p.delta > 0 && p.delta < p.epsilon_target)) {
    throw GenerationError("need 0 < delta < epsilon_target");
  }
  if (p.align <= 0) throw GenerationError("align must be positive");
  if (!(p.leg_consumption >= 0 && 4 * p.leg_consumption < 1)) {
    throw GenerationError("leg consumption must lie in [0, 0.25)");
  }

  const auto profile = make_profile(p.cv_shape, p.cc_rate, p.cv_break);
  const auto curve = solve_max_power_curve(profile, p.curve_options);
  const double cap = curve.soc_cap();
  const double leg = p.leg_consumption;
  const std::int64_t a = p.align;

  double arrival_soc = 0.0;   // exact soc at each station arrival
  double departure_soc = 0.0;  // exact soc after each charge window
  std::int64_t window = 0;
  if (!p.overestimation) {
    // Longest aligned window that does not outlast the full charge, so the
    // estimator gets no spare steps to catch up.
    arrival_soc = p.delta;
    window = static_cast<std::int64_t>(
                 std::floor(charge_duration(curve, arrival_soc, cap) / static_cast<double>(a))) *
             a;
    if (window < a) throw GenerationError("align exceeds the full charge duration");
    departure_soc = arrival_soc + charge_increment(curve, arrival_soc, static_cast<double>(window));
  } else {
    arrival_soc = 0.5 * p.delta;
    const double ceiling = p.cv_break + 0.8 * (1.0 - p.cv_break);
    const double t0 = curve.time_at(arrival_soc);
    window = static_cast<std::int64_t>(std::floor((curve.time_at(ceiling) - t0) / static_cast<double>(a))) * a;
    if (window < a) {
      throw GenerationError("no aligned charge window ends in the CV phase; reduce align");
    }
    departure_soc = curve.soc_at(t0 + static_cast<double>(window));
    if (departure_soc <= p.cv_break) {
      throw GenerationError("aligned charge window ends before the CV phase; reduce align");
    }
  }

  // Block consumptions: pull-out leg + trip + leg to the station.
  const double first_trip = 1.0 - 2.0 * leg - arrival_soc;
  // Middle and last blocks drain the charged battery to arrival_soc (under)
  // or to -delta/2 (over).
  const double next_arrival = p.overestimation ? -0.5 * p.delta : arrival_soc;
  const double chain_trip = departure_soc - next_arrival - 2.0 * leg;
  if (!(first_trip > 0 && first_trip <= 1 && chain_trip > 0 && chain_trip <= 1)) {
    throw GenerationError("delta and leg consumption leave no valid trip consumption");
  }
  if (p.overestimation && 1.0 - 2.0 * leg - chain_trip < 0) {
    throw GenerationError("single-trip courses would be infeasible; reduce delta or leg consumption");
  }

  Instance inst;
  inst.name = std::string("worst-case-") + (p.overestimation ? "over" : "under") + "-n" +
              std::to_string(p.n);
  const std::string type = "E";
  inst.vehicle_types.push_back({type, true, p.battery_kwh, 0.0, 1000.0});
  inst.profiles.push_back({"cccv", profile});
  for (int i = 1; i < p.n; ++i) {
    inst.depots.push_back({"d" + std::to_string(i), std::nullopt, {}});
  }
  if (inst.depots.empty()) inst.depots.push_back({"d1", std::nullopt, {}});

  auto add_leg = [&](const std::string& from, const std::string& to, double e) {
    inst.deadheads.push_back({from, to, a, 0.0, {{type, e}}});
  };
  const double rated_kw = p.battery_kwh * p.cc_rate * 3600.0;

  std::int64_t t = align_up(21600.0, a);
  for (int i = 1; i <= p.n; ++i) {
    const std::string id = std::to_string(i);
    const std::string start = "A" + id;
    const std::string end = "B" + id;
    const double consumption = i == 1 ? first_trip : chain_trip;
    const std::int64_t dep = t + a;  // pull-out or station egress leg
    const std::int64_t arr = dep + 3 * a;
    inst.trips.push_back({"tau" + id, start, end, dep, arr, {{type, consumption}}});

    const std::string home = (i == 1 || i == p.n) ? "d1" : "d" + id;
    add_leg(home, start, leg);
    add_leg(end, home, leg);

    if (i < p.n) {
      const std::string station = "S" + id;
      add_leg(end, station, leg);
      add_leg(station, "A" + std::to_string(i + 1), leg);
      const std::int64_t w0 = arr + a;
      const std::int64_t w1 = w0 + window;
      inst.grid_points.push_back({"g" + id, 0.0, {{w0, w1, rated_kw}}, 0.0, {}});
      inst.chargers.push_back({"c" + id, station, 1, "g" + id, {{type, "cccv"}}, {{w0, w1}}, 0.0});
      t = w1;
    } else {
      t = arr + a;
    }
  }
  inst.horizon = {0, std::max<std::int64_t>(86400, align_up(static_cast<double>(t + a), a))};

  inst.metadata = {{"generator", "worst-case"},
                   {"variant", p.overestimation ? "over" : "under"},
                   {"n", std::to_string(p.n)},
                   {"delta", num_str(p.delta)},
                   {"epsilon_target", num_str(p.epsilon_target)},
                   {"align", std::to_string(p.align)},
                   {"charge_window", std::to_string(window)},
                   {"station_arrival_soc", num_str(arrival_soc)},
                   {"station_departure_soc", num_str(departure_soc)},
                   {"full_tolerance", num_str(p.curve_options.full_tolerance)}};
  validate_instance(inst);
  return inst;
}

SyntheticParams SyntheticParams::preset(const std::string& row) {
  // electric types, non-electric types, depots, charge slots, grid points, trips
  struct Row {
    char id;
    std::array<int, 6> shape;
  };
  static constexpr Row kRows[] = {
      {'A', {1, 0, 1, 3, 1, 121}},  {'B', {1, 0, 1, 2, 1, 123}},  {'C', {2, 0, 1, 3, 1, 146}},
      {'D', {1, 0, 1, 3, 1, 185}},  {'E', {1, 0, 1, 8, 1, 189}},  {'F', {1, 0, 1, 3, 1, 232}},
      {'G', {1, 0, 1, 5, 2, 232}},  {'H', {1, 1, 1, 6, 1, 333}},  {'I', {1, 1, 1, 7, 2, 333}},
      {'J', {1, 0, 1, 14, 1, 678}}, {'K', {1, 0, 1, 43, 1, 709}}, {'L', {1, 0, 1, 37, 1, 709}},
      {'M', {1, 0, 1, 34, 1, 709}}, {'N', {2, 1, 2, 12, 1, 822}}, {'O', {1, 1, 1, 10, 1, 837}},
      {'P', {1, 0, 1, 28, 1, 1207}},
  };
  for (const auto& r : kRows) {
    if (row.size() == 1 && std::toupper(static_cast<unsigned char>(row[0])) == r.id) {
      SyntheticParams p;
      p.electric_types = r.shape[0];
      p.non_electric_types = r.shape[1];
      p.depots = r.shape[2];
      p.charge_slots = r.shape[3];
      p.grid_points = r.shape[4];
      p.trips = r.shape[5];
      p.chargers = std::max(p.grid_points, (p.charge_slots + 3) / 4);
      return p;
    }
  }
  throw InvalidInput("unknown preset '" + row + "' (expected A..P)");
}

Instance generate_synthetic(const SyntheticParams& p) {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw GenerationError(msg);
  };
  check(p.trips >= 1 && p.trips <= 1300, "trips must lie in [1, 1300]");
  check(p.electric_types >= 0 && p.non_electric_types >= 0 &&
            p.electric_types + p.non_electric_types >= 1,
        "need at least one vehicle type");
  check(p.depots >= 1 && p.depots <= 10, "depots must lie in [1, 10]");
  check(p.chargers >= 0 && p.charge_slots >= p.chargers, "need at least one slot per charger");
  check(p.chargers == 0 || (p.grid_points >= 1 && p.grid_points <= p.chargers),
        "grid points must lie in [1, chargers]");
  check(p.chargers == 0 || p.electric_types >= 1, "chargers need an electric vehicle type");
  check(p.area_km > 0 && p.battery_kwh > 0 && p.kwh_per_km > 0 && p.speed_kmh > 0,
        "geometry and vehicle parameters must be positive");
  check(p.horizon >= 4 * 3600, "horizon must cover at least four hours");

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n_terminals = p.terminals > 0 ? p.terminals : std::max(3, p.trips / 5);

  struct Point {
    std::string id;
    double x, y;
  };
  auto random_point = [&](std::string id) {
    return Point{std::move(id), unit(rng) * p.area_km, unit(rng) * p.area_km};
  };
  auto pad = [](int i, int width) {
    std::string s = std::to_string(i);
    return std::string(width - std::min<int>(width, s.size()), '0') + s;
  };

  std::vector<Point> terminals;
  for (int i = 1; i <= n_terminals; ++i) terminals.push_back(random_point("T" + pad(i, 3)));
  std::vector<Point> depots;
  for (int i = 1; i <= p.depots; ++i) depots.push_back(random_point("dep" + std::to_string(i)));
  auto dist = [](const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); };

  Instance inst;
  inst.name = "synthetic-" + std::to_string(p.trips) + "-seed" + std::to_string(p.seed);
  inst.horizon = {0, p.horizon};

  std::vector<std::string> electric;
  for (int i = 1; i <= p.electric_types; ++i) {
    const std::string id = "E" + std::to_string(i);
    const double battery = p.battery_kwh * (1.0 + 0.25 * (i - 1));
    inst.vehicle_types.push_back({id, true, battery, 1.0, 1000.0});
    inst.profiles.push_back({"q" + id, ChargingPowerProfile::Quadratic(p.cc_rate, p.cv_break)});
    electric.push_back(id);
  }
  for (int i = 1; i <= p.non_electric_types; ++i) {
    inst.vehicle_types.push_back({"D" + std::to_string(i), false, 0.0, 1.2, 1000.0});
  }
  for (const auto& d : depots) inst.depots.push_back({d.id, std::nullopt, {}});

  auto consumption_for = [&](double km) {
    std::map<std::string, double> out;
    for (const auto& v : inst.vehicle_types) {
      out[v.id] = v.electric ? std::min(1.0, km * p.kwh_per_km / v.battery_kwh) : 0.0;
    }
    return out;
  };
  auto travel_time = [&](double km) {
    return std::max<std::int64_t>(60, align_up(km / p.speed_kmh * 3600.0, 60));
  };
  auto add_leg = [&](const Point& a, const Point& b) {
    const double km = dist(a, b);
    inst.deadheads.push_back({a.id, b.id, travel_time(km), km, consumption_for(km)});
  };
  for (const auto& a : terminals) {
    for (const auto& b : terminals) {
      if (&a != &b) add_leg(a, b);
    }
  }
  for (const auto& d : depots) {
    for (const auto& t : terminals) {
      add_leg(d, t);
      add_leg(t, d);
    }
  }

  const std::int64_t service_start = std::min<std::int64_t>(5 * 3600, p.horizon / 4);
  const std::int64_t service_end = p.horizon - 3600;
  for (int i = 1; i <= p.trips; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
      const auto& s = terminals[static_cast<std::size_t>(unit(rng) * n_terminals) % terminals.size()];
      const auto& e = terminals[static_cast<std::size_t>(unit(rng) * n_terminals) % terminals.size()];
      const double km = dist(s, e) * (1.3 + 1.2 * unit(rng)) + 5.0 + 10.0 * unit(rng);
      const std::int64_t duration = travel_time(km);
      const std::int64_t latest = service_end - duration;
      if (latest <= service_start) continue;
      const std::int64_t dep =
          service_start + align_up(unit(rng) * static_cast<double>(latest - service_start), 60);
      if (dep + duration > service_end) continue;
      auto consumption = consumption_for(km);
      // Some depot must serve the trip on its own without charging.
      bool served = false;
      for (const auto& d : depots) {
        bool all_types = true;
        for (const auto& v : inst.vehicle_types) {
          if (!v.electric) continue;
          const double round = (dist(d, s) + dist(e, d)) * p.kwh_per_km / v.battery_kwh;
          all_types = all_types && round + consumption[v.id] <= 1.0;
        }
        served = served || all_types;
      }
      if (!served) continue;
      inst.trips.push_back({"t" + pad(i, 4), s.id, e.id, dep, dep + duration, std::move(consumption)});
      placed = true;
    }
    if (!placed) throw GenerationError("could not place trip " + std::to_string(i) + "; enlarge battery or shrink area");
  }
  std::stable_sort(inst.trips.begin(), inst.trips.end(), [](const Trip& a, const Trip& b) {
    return a.departure < b.departure;
  });

  for (int g = 1; g <= (p.chargers > 0 ? p.grid_points : 0); ++g) {
    GridPoint gp;
    gp.id = "g" + std::to_string(g);
    gp.max_kw = p.grid_max_kw;
    gp.price_per_kwh = 0.25;
    // Night tariff, clipped to the horizon.
    gp.price_windows = {{0, std::min<std::int64_t>(6 * 3600, p.horizon), 0.12}};
    if (p.horizon > 22 * 3600) gp.price_windows.push_back({22 * 3600, p.horizon, 0.12});
    inst.grid_points.push_back(std::move(gp));
  }
  for (int c = 0; c < p.chargers; ++c) {
    Charger ch;
    ch.id = "c" + std::to_string(c + 1);
    ch.location = terminals[static_cast<std::size_t>(c) % terminals.size()].id;
    ch.slots = p.charge_slots / p.chargers + (c < p.charge_slots % p.chargers ? 1 : 0);
    ch.grid_point = "g" + std::to_string(c % p.grid_points + 1);
    for (const auto& e : electric) ch.profiles[e] = "q" + e;
    inst.chargers.push_back(std::move(ch));
  }

  // Small instances can leave terminals without trips or chargers.
  std::set<std::string> used;
  for (const auto& d : inst.depots) used.insert(d.id);
  for (const auto& t : inst.trips) used.insert({t.start_location, t.end_location});
  for (const auto& c : inst.chargers) used.insert(c.location);
  std::erase_if(inst.deadheads, [&](const Deadhead& d) { return !used.count(d.from) || !used.count(d.to); });

  inst.metadata = {{"generator", "synthetic"},
                   {"seed", std::to_string(p.seed)},
                   {"trips", std::to_string(p.trips)},
                   {"terminals", std::to_string(n_terminals)}};
  validate_instance(inst);
  return inst;
}

}  // namespace ebsched

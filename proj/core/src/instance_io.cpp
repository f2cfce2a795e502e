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

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ebsched/error.hpp"
#include "ebsched/instance.hpp"

namespace ebsched {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormat = "ebsched-instance";

class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw SchemaError(path_, "expected an object");
  }

  // Rejects keys outside `allowed`, catching typos early.
  void only(std::initializer_list<const char*> allowed) const {
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : node_.items()) {
      if (!keys.count(key)) throw SchemaError(path_ + "/" + key, "unknown field");
    }
  }

  bool has(const char* key) const { return node_.contains(key) && !node_.at(key).is_null(); }

  const Json& at(const char* key) const {
    if (!node_.contains(key)) throw SchemaError(path_ + "/" + key, "missing field");
    return node_.at(key);
  }

  std::string child(const char* key) const { return path_ + "/" + key; }

  std::string str(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) throw SchemaError(child(key), "expected a string");
    return v.get<std::string>();
  }

  double num(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number()) throw SchemaError(child(key), "expected a number");
    return v.get<double>();
  }

  double num_or(const char* key, double fallback) const { return has(key) ? num(key) : fallback; }

  std::optional<double> opt_num(const char* key) const {
    if (!has(key)) return std::nullopt;
    return num(key);
  }

  std::int64_t integer(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number_integer()) throw SchemaError(child(key), "expected an integer (seconds)");
    return v.get<std::int64_t>();
  }

  bool boolean(const char* key) const {
    const auto& v = at(key);
    if (!v.is_boolean()) throw SchemaError(child(key), "expected a boolean");
    return v.get<bool>();
  }

  const Json& array(const char* key, bool required = true) const {
    static const Json empty = Json::array();
    if (!required && !has(key)) return empty;
    const auto& v = at(key);
    if (!v.is_array()) throw SchemaError(child(key), "expected an array");
    return v;
  }

  std::map<std::string, double> num_map(const char* key) const {
    std::map<std::string, double> out;
    if (!has(key)) return out;
    const auto& v = at(key);
    if (!v.is_object()) throw SchemaError(child(key), "expected an object");
    for (const auto& [k, x] : v.items()) {
      if (!x.is_number()) throw SchemaError(child(key) + "/" + k, "expected a number");
      out[k] = x.get<double>();
    }
    return out;
  }

  std::map<std::string, std::string> str_map(const char* key) const {
    std::map<std::string, std::string> out;
    if (!has(key)) return out;
    const auto& v = at(key);
    if (!v.is_object()) throw SchemaError(child(key), "expected an object");
    for (const auto& [k, x] : v.items()) {
      if (!x.is_string()) throw SchemaError(child(key) + "/" + k, "expected a string");
      out[k] = x.get<std::string>();
    }
    return out;
  }

 private:
  const Json& node_;
  std::string path_;
};

std::string at_index(const std::string& base, std::size_t i) {
  return base + "/" + std::to_string(i);
}

ChargingPowerProfile read_profile(const Reader& r) {
  const std::string shape_name = r.str("shape");
  CvShape shape;
  try {
    shape = cv_shape_from_string(shape_name);
  } catch (const InvalidInput& e) {
    throw SchemaError(r.child("shape"), e.what());
  }
  const double cc = r.num("cc_rate");
  try {
    switch (shape) {
      case CvShape::kConstant:
        return ChargingPowerProfile::Constant(cc);
      case CvShape::kLinear:
        return ChargingPowerProfile::Linear(cc, r.num("cv_break"));
      case CvShape::kQuadratic:
        return ChargingPowerProfile::Quadratic(cc, r.num("cv_break"));
      case CvShape::kTabulated: {
        std::vector<ChargingPowerProfile::Knot> knots;
        const auto& arr = r.array("knots");
        for (std::size_t i = 0; i < arr.size(); ++i) {
          const auto& k = arr[i];
          if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
            throw SchemaError(at_index(r.child("knots"), i), "expected [soc, rate]");
          }
          knots.push_back({k[0].get<double>(), k[1].get<double>()});
        }
        return ChargingPowerProfile::Tabulated(cc, r.num("cv_break"), std::move(knots),
                                               r.num("cv_second_derivative_bound"));
      }
    }
  } catch (const InvalidInput& e) {
    throw InvariantViolation("profile", e.what());
  }
  throw SchemaError(r.child("shape"), "unsupported shape");
}

Json write_profile(const NamedProfile& p) {
  Json j;
  j["id"] = p.id;
  j["shape"] = to_string(p.profile.shape());
  j["cc_rate"] = p.profile.cc_rate();
  j["cv_break"] = p.profile.cv_break();
  if (p.profile.shape() == CvShape::kTabulated) {
    Json knots = Json::array();
    for (const auto& k : p.profile.knots()) knots.push_back(Json::array({k.soc, k.rate}));
    j["knots"] = knots;
    j["cv_second_derivative_bound"] = p.profile.cv_second_derivative_bound();
  }
  return j;
}

template <typename F>
void each(const Json& arr, const std::string& base, F&& f) {
  for (std::size_t i = 0; i < arr.size(); ++i) f(Reader(arr[i], at_index(base, i)));
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json number_map(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("not a JSON document: ") + e.what());
  }
  Reader root(doc, "");
  root.only({"format", "version", "name", "units", "horizon", "vehicle_types", "depots",
             "profiles", "grid_points", "chargers", "trips", "deadheads", "mix_constraints",
             "metadata"});
  if (root.str("format") != kFormat) throw SchemaError("/format", "expected '" + std::string(kFormat) + "'");
  if (root.integer("version") != kInstanceSchemaVersion) {
    throw SchemaError("/version", "unsupported schema version");
  }

  Instance inst;
  inst.name = root.has("name") ? root.str("name") : std::string();
  {
    Reader h(root.at("horizon"), "/horizon");
    h.only({"start", "end"});
    inst.horizon = {h.integer("start"), h.integer("end")};
  }
  each(root.array("vehicle_types"), "/vehicle_types", [&](const Reader& r) {
    r.only({"id", "electric", "battery_kwh", "cost_per_km", "fixed_cost"});
    inst.vehicle_types.push_back({r.str("id"), r.boolean("electric"), r.num_or("battery_kwh", 0.0),
                                  r.num_or("cost_per_km", 0.0), r.num_or("fixed_cost", 0.0)});
  });
  each(root.array("depots"), "/depots", [&](const Reader& r) {
    r.only({"id", "capacity", "vehicle_types"});
    Depot d;
    d.id = r.str("id");
    if (r.has("capacity")) d.capacity = static_cast<int>(r.integer("capacity"));
    const auto& types = r.array("vehicle_types", false);
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (!types[i].is_string()) throw SchemaError(at_index(r.child("vehicle_types"), i), "expected a string");
      d.vehicle_types.push_back(types[i].get<std::string>());
    }
    inst.depots.push_back(std::move(d));
  });
  each(root.array("profiles", false), "/profiles", [&](const Reader& r) {
    r.only({"id", "shape", "cc_rate", "cv_break", "knots", "cv_second_derivative_bound"});
    inst.profiles.push_back({r.str("id"), read_profile(r)});
  });
  each(root.array("grid_points", false), "/grid_points", [&](const Reader& r) {
    r.only({"id", "max_kw", "power_windows", "price_per_kwh", "price_windows"});
    GridPoint g;
    g.id = r.str("id");
    g.max_kw = r.opt_num("max_kw");
    each(r.array("power_windows", false), r.child("power_windows"), [&](const Reader& w) {
      w.only({"start", "end", "max_kw"});
      g.power_windows.push_back({w.integer("start"), w.integer("end"), w.num("max_kw")});
    });
    g.price_per_kwh = r.num_or("price_per_kwh", 0.0);
    each(r.array("price_windows", false), r.child("price_windows"), [&](const Reader& w) {
      w.only({"start", "end", "price_per_kwh"});
      g.price_windows.push_back({w.integer("start"), w.integer("end"), w.num("price_per_kwh")});
    });
    inst.grid_points.push_back(std::move(g));
  });
  each(root.array("chargers", false), "/chargers", [&](const Reader& r) {
    r.only({"id", "location", "slots", "grid_point", "profiles", "availability", "arc_consumption"});
    Charger c;
    c.id = r.str("id");
    c.location = r.str("location");
    c.slots = static_cast<int>(r.integer("slots"));
    c.grid_point = r.str("grid_point");
    c.profiles = r.str_map("profiles");
    each(r.array("availability", false), r.child("availability"), [&](const Reader& w) {
      w.only({"start", "end"});
      c.availability.push_back({w.integer("start"), w.integer("end")});
    });
    c.arc_consumption = r.num_or("arc_consumption", 0.0);
    inst.chargers.push_back(std::move(c));
  });
  each(root.array("trips"), "/trips", [&](const Reader& r) {
    r.only({"id", "start_location", "end_location", "departure", "arrival", "consumption"});
    inst.trips.push_back({r.str("id"), r.str("start_location"), r.str("end_location"),
                          r.integer("departure"), r.integer("arrival"), r.num_map("consumption")});
  });
  each(root.array("deadheads", false), "/deadheads", [&](const Reader& r) {
    r.only({"from", "to", "duration", "distance_km", "consumption"});
    inst.deadheads.push_back({r.str("from"), r.str("to"), r.integer("duration"),
                              r.num_or("distance_km", 0.0), r.num_map("consumption")});
  });
  each(root.array("mix_constraints", false), "/mix_constraints", [&](const Reader& r) {
    r.only({"id", "terms", "lower", "upper"});
    MixConstraint m;
    m.id = r.str("id");
    each(r.array("terms"), r.child("terms"), [&](const Reader& t) {
      t.only({"vehicle_type", "depot", "coefficient"});
      m.terms.push_back({t.str("vehicle_type"), t.str("depot"), t.num_or("coefficient", 1.0)});
    });
    m.lower = r.opt_num("lower");
    m.upper = r.opt_num("upper");
    inst.mix_constraints.push_back(std::move(m));
  });
  if (root.has("metadata")) {
    const auto& meta = root.at("metadata");
    if (!meta.is_object()) throw SchemaError("/metadata", "expected an object");
    for (const auto& [k, v] : meta.items()) {
      if (!v.is_string()) throw SchemaError("/metadata/" + k, "expected a string");
      inst.metadata[k] = v.get<std::string>();
    }
  }
  validate_instance(inst);
  return inst;
}

std::string dump_instance(const Instance& inst) {
  Json doc;
  doc["format"] = kFormat;
  doc["version"] = kInstanceSchemaVersion;
  doc["name"] = inst.name;
  doc["units"] = {{"time", "s"}, {"energy", "relative_soc"}, {"battery", "kWh"}, {"power", "kW"}};
  doc["horizon"] = {{"start", inst.horizon.start}, {"end", inst.horizon.end}};

  Json types = Json::array();
  for (const auto& v : inst.vehicle_types) {
    types.push_back({{"id", v.id},
                     {"electric", v.electric},
                     {"battery_kwh", v.battery_kwh},
                     {"cost_per_km", v.cost_per_km},
                     {"fixed_cost", v.fixed_cost}});
  }
  doc["vehicle_types"] = types;

  Json depots = Json::array();
  for (const auto& d : inst.depots) {
    Json j;
    j["id"] = d.id;
    j["capacity"] = d.capacity ? Json(*d.capacity) : Json(nullptr);
    j["vehicle_types"] = d.vehicle_types;
    depots.push_back(j);
  }
  doc["depots"] = depots;

  Json profiles = Json::array();
  for (const auto& p : inst.profiles) profiles.push_back(write_profile(p));
  doc["profiles"] = profiles;

  Json grid = Json::array();
  for (const auto& g : inst.grid_points) {
    Json j;
    j["id"] = g.id;
    j["max_kw"] = optional_number(g.max_kw);
    Json pw = Json::array();
    for (const auto& w : g.power_windows) {
      pw.push_back({{"start", w.start}, {"end", w.end}, {"max_kw", w.max_kw}});
    }
    j["power_windows"] = pw;
    j["price_per_kwh"] = g.price_per_kwh;
    Json prices = Json::array();
    for (const auto& w : g.price_windows) {
      prices.push_back({{"start", w.start}, {"end", w.end}, {"price_per_kwh", w.price_per_kwh}});
    }
    j["price_windows"] = prices;
    grid.push_back(j);
  }
  doc["grid_points"] = grid;

  Json chargers = Json::array();
  for (const auto& c : inst.chargers) {
    Json j;
    j["id"] = c.id;
    j["location"] = c.location;
    j["slots"] = c.slots;
    j["grid_point"] = c.grid_point;
    Json prof = Json::object();
    for (const auto& [k, v] : c.profiles) prof[k] = v;
    j["profiles"] = prof;
    Json avail = Json::array();
    for (const auto& w : c.availability) avail.push_back({{"start", w.start}, {"end", w.end}});
    j["availability"] = avail;
    j["arc_consumption"] = c.arc_consumption;
    chargers.push_back(j);
  }
  doc["chargers"] = chargers;

  Json trips = Json::array();
  for (const auto& t : inst.trips) {
    trips.push_back({{"id", t.id},
                     {"start_location", t.start_location},
                     {"end_location", t.end_location},
                     {"departure", t.departure},
                     {"arrival", t.arrival},
                     {"consumption", number_map(t.consumption)}});
  }
  doc["trips"] = trips;

  Json legs = Json::array();
  for (const auto& d : inst.deadheads) {
    legs.push_back({{"from", d.from},
                    {"to", d.to},
                    {"duration", d.duration},
                    {"distance_km", d.distance_km},
                    {"consumption", number_map(d.consumption)}});
  }
  doc["deadheads"] = legs;

  Json mix = Json::array();
  for (const auto& m : inst.mix_constraints) {
    Json terms = Json::array();
    for (const auto& t : m.terms) {
      terms.push_back({{"vehicle_type", t.vehicle_type}, {"depot", t.depot}, {"coefficient", t.coefficient}});
    }
    mix.push_back({{"id", m.id}, {"terms", terms}, {"lower", optional_number(m.lower)},
                   {"upper", optional_number(m.upper)}});
  }
  doc["mix_constraints"] = mix;

  Json meta = Json::object();
  for (const auto& [k, v] : inst.metadata) meta[k] = v;
  doc["metadata"] = meta;
  return doc.dump(1) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read instance file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << dump_instance(instance);
  if (!out) throw Error("write failed for " + path);
}

}  // namespace ebsched

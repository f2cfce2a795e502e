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

// ebsched command-line front end. Heavy outputs go to files; stdout gets one
// machine-readable summary line per run.

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ebsched/error.hpp"
#include "ebsched/generators.hpp"
#include "ebsched/instance.hpp"
#include "ebsched/netgraph.hpp"
#include "ebsched/pipeline.hpp"
#include "ebsched/schedule.hpp"
#include "ebsched/validate.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace ebsched;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEnvironment = 3;
constexpr int kExitInfeasible = 4;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Provenance {
  Json config;
  std::string hash;

  Provenance(const std::string& command, Json settings) {
    config = Json::object();
    config["tool"] = "ebsched";
    config["version"] = EBSCHED_VERSION;
    config["command"] = command;
    config["settings"] = std::move(settings);
    hash = hex(fnv1a(config.dump()));
    config["config_hash"] = hash;
  }
  std::string line() const { return std::string("ebsched ") + EBSCHED_VERSION + " config " + hash; }
};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

// Prefixes a comment line naming the configuration that produced the file.
void stamp_text(const fs::path& p, const Provenance& prov, const std::string& comment) {
  if (!fs::exists(p)) return;
  write_text(p, comment + " " + prov.line() + "\n" + read_text(p));
}

void stamp_json(const fs::path& p, const Provenance& prov) {
  if (!fs::exists(p)) return;
  const Json body = Json::parse(read_text(p));
  Json doc = Json::object();
  doc["provenance"] = {{"version", EBSCHED_VERSION}, {"config_hash", prov.hash}};
  for (const auto& [k, v] : body.items()) doc[k] = v;
  write_text(p, doc.dump(1) + "\n");
}

// Outputs are assembled in a sibling staging directory and moved into place
// once complete.
class OutputDir {
 public:
  explicit OutputDir(fs::path target) : target_(std::move(target)) {
    if (target_.empty()) throw InvalidInput("--out is required");
    staging_ = target_;
    staging_ += ".partial-" + std::to_string(::getpid());
    fs::remove_all(staging_);
    if (target_.has_parent_path()) fs::create_directories(target_.parent_path());
    fs::create_directories(staging_);
  }
  ~OutputDir() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(staging_, ec);
    }
  }
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  fs::path file(const std::string& name) const { return staging_ / name; }
  const fs::path& staging() const { return staging_; }
  const fs::path& target() const { return target_; }

  void commit(const Provenance& prov) {
    write_text(file("config.json"), prov.config.dump(1) + "\n");
    if (fs::exists(target_)) fs::remove_all(target_);
    fs::rename(staging_, target_);
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path staging_;
  bool committed_ = false;
};

std::string default_solver_command() {
  for (const char* script : {EBSCHED_SOURCE_SOLVER_SCRIPT, EBSCHED_INSTALLED_SOLVER_SCRIPT}) {
    if (fs::exists(script)) {
      return std::string("python3 '") + script +
             "' {model} {solution} --time-limit {timelimit} --threads {threads} --quiet";
    }
  }
  return "";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "none"; }

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream field(item);
    T v{};
    if (!(field >> v)) throw InvalidInput(std::string("bad value '") + item + "' in " + flag);
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput(std::string(flag) + " needs at least one value");
  return out;
}

struct SolveFlags {
  std::int64_t theta = 300;
  int segments = 4;
  std::string estimator = "under";
  std::optional<double> grid_cap;
  std::string solver_cmd;
  double time_limit = 600.0;
  int threads = 1;
  bool strengthen = false;
  bool linear_charging = false;
  int precondition = 0;
  int lookahead = 1;
  bool parking = false;
  std::string format = "lp";
  std::uint64_t seed = 1;
  std::string out;

  void attach(CLI::App* app, bool with_grid_cap = true) {
    app->add_option("--theta", theta, "Time step in seconds")->capture_default_str();
    app->add_option("--segments", segments, "Segments m of the increment domain")->capture_default_str();
    app->add_option("--estimator", estimator, "under or over")
        ->check(CLI::IsMember({"under", "over"}))
        ->capture_default_str();
    if (with_grid_cap) app->add_option("--grid-cap", grid_cap, "Cap grid load at this fraction of the uncapped peak");
    app->add_option("--solver-cmd", solver_cmd,
                    "Solver command template with {model} {solution} {timelimit} {threads}");
    app->add_option("--time-limit", time_limit, "Solver time limit in seconds")->capture_default_str();
    app->add_option("--threads", threads, "Solver threads")->capture_default_str();
    app->add_flag("--strengthen", strengthen, "Use the strengthened soc bounds");
    app->add_flag("--linear-charging", linear_charging, "Charge at the constant-current rate regardless of soc");
    app->add_option("--precondition", precondition, "Lead steps of the preconditioning rows (0 disables)");
    app->add_option("--lookahead", lookahead, "Timeline nodes reachable by access and egress arcs")
        ->capture_default_str();
    app->add_flag("--parking", parking, "Add depot parking timelines");
    app->add_option("--format", format, "Model file format")->check(CLI::IsMember({"lp", "mps"}));
    app->add_option("--seed", seed, "Recorded for provenance; the pipeline is deterministic");
    app->add_option("--out", out, "Output directory")->required();
  }

  SolveOptions options() const {
    SolveOptions o;
    o.theta = theta;
    o.segments = segments;
    o.estimator = estimator_from_string(estimator);
    o.grid_cap_fraction = grid_cap;
    o.strengthening = strengthen;
    o.linear_charging = linear_charging;
    o.precondition_lead = precondition;
    o.graph.access_lookahead = lookahead;
    o.graph.parking_timelines = parking;
    o.solver.command = solver_cmd.empty() ? default_solver_command() : solver_cmd;
    o.solver.time_limit = time_limit;
    o.solver.threads = threads;
    o.solver.format = format == "mps" ? ModelFormat::kMps : ModelFormat::kLp;
    return o;
  }

  Json json() const {
    return {{"theta", theta},
            {"segments", segments},
            {"estimator", estimator},
            {"grid_cap", grid_cap ? Json(*grid_cap) : Json(nullptr)},
            {"solver_cmd", solver_cmd},
            {"time_limit", time_limit},
            {"threads", threads},
            {"strengthen", strengthen},
            {"linear_charging", linear_charging},
            {"precondition", precondition},
            {"lookahead", lookahead},
            {"parking", parking},
            {"format", format},
            {"seed", seed}};
  }
};

Json instance_settings(const std::string& path, const Instance& inst) {
  return {{"instance", path}, {"instance_hash", hex(fnv1a(dump_instance(inst)))}};
}

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

// Writes schedule, report and series of a solve into `dir`.
void write_solve_outputs(const Instance& inst, const SolveOutcome& r, const fs::path& dir, const Provenance& prov) {
  write_graph_stats_csv(*r.graph, (dir / "graph_stats.csv").string());
  stamp_text(dir / "graph_stats.csv", prov, "#");
  if (!r.schedule) return;
  save_schedule(*r.schedule, (dir / "schedule.json").string());
  stamp_json(dir / "schedule.json", prov);
  write_phi_csv(*r.schedule, (dir / "phi.csv").string());
  stamp_text(dir / "phi.csv", prov, "#");
  write_grid_load_csv(grid_load_profile(inst, *r.schedule), (dir / "grid_load.csv").string());
  stamp_text(dir / "grid_load.csv", prov, "#");
  if (r.report) {
    write_text(dir / "report.json", report_to_json(*r.report));
    stamp_json(dir / "report.json", prov);
    write_trace_csv(*r.report, (dir / "trace.csv").string());
    stamp_text(dir / "trace.csv", prov, "#");
  }
}

void stamp_models(const fs::path& dir, const Provenance& prov) {
  if (!fs::exists(dir)) return;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (ext == ".lp") stamp_text(entry.path(), prov, "\\");
    if (ext == ".mps") stamp_text(entry.path(), prov, "*");
  }
}

int cmd_generate_worst_case(const WorstCaseParams& p, const std::string& variant, const std::string& out) {
  WorstCaseParams params = p;
  params.overestimation = variant == "over";
  Instance inst = generate_worst_case(params);
  const Provenance prov("generate worst-case", {{"n", params.n},
                                                {"delta", params.delta},
                                                {"epsilon", params.epsilon_target},
                                                {"variant", variant},
                                                {"cv_shape", to_string(params.cv_shape)},
                                                {"align", params.align}});
  inst.metadata["config_hash"] = prov.hash;
  const fs::path tmp = out + ".partial";
  save_instance(inst, tmp.string());
  fs::rename(tmp, out);
  std::cout << "generated=" << out << " kind=worst-case trips=" << inst.trips.size() << " config=" << prov.hash
            << "\n";
  return kExitOk;
}

int cmd_generate_synthetic(SyntheticParams params, const std::string& preset, const std::string& out) {
  const Provenance prov("generate synthetic", {{"preset", preset},
                                               {"seed", params.seed},
                                               {"trips", params.trips},
                                               {"electric_types", params.electric_types},
                                               {"non_electric_types", params.non_electric_types},
                                               {"depots", params.depots},
                                               {"chargers", params.chargers},
                                               {"charge_slots", params.charge_slots},
                                               {"grid_points", params.grid_points},
                                               {"grid_max_kw", params.grid_max_kw ? Json(*params.grid_max_kw) : Json(nullptr)}});
  Instance inst = generate_synthetic(params);
  inst.metadata["config_hash"] = prov.hash;
  const fs::path tmp = out + ".partial";
  save_instance(inst, tmp.string());
  fs::rename(tmp, out);
  std::cout << "generated=" << out << " kind=synthetic trips=" << inst.trips.size() << " config=" << prov.hash << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& instance_path, const SolveFlags& flags) {
  const Instance inst = load_instance(instance_path);
  Json settings = instance_settings(instance_path, inst);
  merge(settings, flags.json());
  const Provenance prov("solve", settings);
  OutputDir out(flags.out);
  SolveOptions o = flags.options();
  o.solver.work_dir = out.file("work").string();
  const SolveOutcome r = run_solve(inst, o);
  write_solve_outputs(inst, r, out.staging(), prov);
  stamp_models(out.file("work"), prov);
  out.commit(prov);

  std::cout << "status=" << to_string(r.raw.status);
  if (r.raw.has_incumbent) std::cout << " objective=" << fmt(r.raw.objective);
  std::cout << " bound=" << fmt(r.raw.bound);
  if (r.schedule) std::cout << " fleet=" << r.schedule->courses.size();
  if (r.report) std::cout << " energy_feasible=" << (r.report->energy_feasible() ? "yes" : "no");
  std::cout << " out=" << flags.out << " config=" << prov.hash << "\n";
  return r.schedule ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const std::string& instance_path, const SolveFlags& flags, const std::string& m_grid,
              const std::string& theta_grid, int workers, std::int64_t reference_theta,
              const std::string& reference_path, bool no_reference) {
  const Instance inst = load_instance(instance_path);
  Json settings = instance_settings(instance_path, inst);
  merge(settings, flags.json());
  settings["m_grid"] = m_grid;
  settings["theta_grid"] = theta_grid;
  settings["workers"] = workers;
  settings["reference_theta"] = reference_theta;
  settings["reference"] = reference_path;
  settings["no_reference"] = no_reference;
  const Provenance prov("sweep", settings);

  SweepOptions o;
  o.segments = parse_list<int>(m_grid, "--m-grid");
  o.thetas = parse_list<std::int64_t>(theta_grid, "--theta-grid");
  o.base = flags.options();
  o.workers = workers;
  o.reference_theta = reference_theta;
  o.compute_reference = !no_reference;
  if (!reference_path.empty()) o.reference = load_schedule(reference_path);
  OutputDir out(flags.out);
  o.base.solver.work_dir = out.file("work").string();
  const SweepResult result = discretization_sweep(inst, o);
  write_sweep_csv(result, out.file("sweep.csv").string());
  stamp_text(out.file("sweep.csv"), prov, "#");
  if (result.reference) {
    save_schedule(*result.reference, out.file("reference_schedule.json").string());
    stamp_json(out.file("reference_schedule.json"), prov);
  }
  stamp_models(out.file("work"), prov);
  out.commit(prov);

  int solved = 0;
  for (const auto& row : result.rows) solved += row.objective.has_value();
  std::cout << "rows=" << result.rows.size() << " solved=" << solved
            << " geomean_gap=" << fmt(geometric_mean_gap(result.rows))
            << " reference=" << (result.reference ? "yes" : "no") << " out=" << flags.out << " config=" << prov.hash
            << "\n";
  if (!result.reference_error.empty()) std::cerr << "reference schedule: " << result.reference_error << "\n";
  return kExitOk;
}

int cmd_compare(const std::string& instance_path, const SolveFlags& flags) {
  const Instance inst = load_instance(instance_path);
  Json settings = instance_settings(instance_path, inst);
  merge(settings, flags.json());
  const Provenance prov("compare", settings);
  OutputDir out(flags.out);
  SolveOptions o = flags.options();
  o.solver.work_dir = out.file("work").string();
  const EstimatorComparison c = compare_estimators(inst, o);
  write_text(out.file("comparison.json"), comparison_to_json(c));
  stamp_json(out.file("comparison.json"), prov);
  stamp_models(out.file("work"), prov);
  out.commit(prov);
  std::cout << "under=" << fmt(c.objective_under) << " over=" << fmt(c.objective_over)
            << " objective_gap=" << fmt(c.objective_gap) << " bound_gap=" << fmt(c.bound_gap)
            << " out=" << flags.out << " config=" << prov.hash << "\n";
  return c.objective_under && c.objective_over ? kExitOk : kExitInfeasible;
}

int cmd_validate(const std::string& instance_path, const std::string& schedule_path, const std::string& mode,
                 int segments, std::optional<std::int64_t> approx_theta, double floor, int threads,
                 const std::string& out_dir) {
  const Instance inst = load_instance(instance_path);
  const Schedule schedule = load_schedule(schedule_path);
  Json settings = instance_settings(instance_path, inst);
  settings["schedule"] = schedule_path;
  settings["mode"] = mode;
  settings["segments"] = segments;
  settings["approx_theta"] = approx_theta ? Json(*approx_theta) : Json(nullptr);
  settings["soc_floor"] = floor;
  const Provenance prov("validate", settings);
  ValidationOptions v;
  v.mode = validation_mode_from_string(mode);
  v.segments = segments;
  v.approx_theta = approx_theta;
  v.soc_floor = floor;
  v.threads = threads;
  OutputDir out(out_dir);
  const ValidationReport report = validate_schedule(inst, schedule, v);
  write_text(out.file("report.json"), report_to_json(report));
  stamp_json(out.file("report.json"), prov);
  write_trace_csv(report, out.file("trace.csv").string());
  stamp_text(out.file("trace.csv"), prov, "#");
  write_grid_load_csv(report.grid, out.file("grid_load.csv").string());
  stamp_text(out.file("grid_load.csv"), prov, "#");
  out.commit(prov);
  std::cout << "energy_feasible=" << (report.energy_feasible() ? "yes" : "no")
            << " weakly_feasible=" << (report.weakly_feasible() ? "yes" : "no")
            << " strongly_feasible=" << (report.strongly_feasible() ? "yes" : "no") << " fleet=" << report.fleet_size
            << " objective=" << fmt(report.objective) << " violations=" << report.violations.size()
            << " out=" << out_dir << " config=" << prov.hash << "\n";
  return report.strongly_feasible() ? kExitOk : kExitInfeasible;
}

int cmd_peak_shave(const std::string& instance_path, const SolveFlags& flags, const std::string& caps_text) {
  const Instance inst = load_instance(instance_path);
  Json settings = instance_settings(instance_path, inst);
  merge(settings, flags.json());
  settings["caps"] = caps_text;
  const Provenance prov("peak-shave", settings);
  std::vector<double> caps = parse_list<double>(caps_text, "--caps");
  OutputDir out(flags.out);

  SolveOptions base = flags.options();
  base.grid_cap_fraction.reset();
  base.validate = false;
  base.solver.work_dir = out.file("work/reference").string();
  const SolveOutcome reference = run_solve(inst, base);
  if (!reference.schedule) {
    std::cerr << "uncapped solve ended with status " << to_string(reference.raw.status) << "\n";
    out.commit(prov);
    return kExitInfeasible;
  }
  const auto peaks = grid_peaks(inst, *reference.schedule);
  std::map<double, Schedule> schedules;
  for (double cap : caps) {
    SolveOptions o = base;
    for (const auto& [gp, peak] : peaks) o.grid_cap_override_kw[gp] = cap * peak;
    o.solver.work_dir = out.file("work/cap_" + fmt(cap)).string();
    SolveOutcome r = run_solve(inst, o);
    if (!r.schedule) {
      std::cerr << "cap " << fmt(cap) << ": status " << to_string(r.raw.status) << "\n";
      continue;
    }
    save_schedule(*r.schedule, out.file("schedule_cap_" + fmt(cap) + ".json").string());
    stamp_json(out.file("schedule_cap_" + fmt(cap) + ".json"), prov);
    schedules.emplace(cap, std::move(*r.schedule));
  }
  const PeakShaveReport report = peak_shave_report(inst, schedules);
  write_peak_shave_csv(report, out.file("peak_shave.csv").string());
  stamp_text(out.file("peak_shave.csv"), prov, "#");
  stamp_models(out.file("work"), prov);
  out.commit(prov);
  std::cout << "caps=" << report.rows.size() << " reference_peak_kw=" << fmt(report.reference_peak_kw)
            << " objective_monotone=" << (report.objective_monotone ? "yes" : "no") << " out=" << flags.out
            << " config=" << prov.hash << "\n";
  return schedules.size() == caps.size() ? kExitOk : kExitInfeasible;
}

int cmd_stats(const std::string& instance_path, std::int64_t theta, int lookahead, bool parking,
              const std::string& out_path) {
  const Instance inst = load_instance(instance_path);
  GraphOptions g;
  g.access_lookahead = lookahead;
  g.parking_timelines = parking;
  const SchedulingGraph graph = build_graph(inst, theta, g);
  Json settings = instance_settings(instance_path, inst);
  settings["theta"] = theta;
  settings["lookahead"] = lookahead;
  settings["parking"] = parking;
  const Provenance prov("stats", settings);
  write_graph_stats_csv(graph, out_path);
  stamp_text(out_path, prov, "#");
  std::cout << "nodes=" << graph.nodes.size() << " arcs=" << graph.arcs.size() << " out=" << out_path
            << " config=" << prov.hash << "\n";
  return kExitOk;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.command().empty()) std::cerr << "command: " << e.command() << "\n";
    if (!e.diagnostics().empty()) std::cerr << e.diagnostics() << "\n";
    return kExitEnvironment;
  } catch (const DecodeError& e) {
    std::cerr << "error: cannot decode solution: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BuildError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electric bus scheduling with non-linear charging"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EBSCHED_VERSION);

  auto* generate = app.add_subcommand("generate", "Generate an instance file");
  generate->require_subcommand(1);

  WorstCaseParams wc;
  std::string wc_variant = "under";
  std::string wc_shape = "quadratic";
  std::string wc_out;
  auto* worst = generate->add_subcommand("worst-case", "Adversarial chain instance");
  worst->add_option("--n", wc.n, "Number of trips")->capture_default_str();
  worst->add_option("--delta", wc.delta, "Arrival soc margin")->capture_default_str();
  worst->add_option("--epsilon", wc.epsilon_target, "Approximation error the instance defeats")->capture_default_str();
  worst->add_option("--variant", wc_variant, "under or over")->check(CLI::IsMember({"under", "over"}));
  worst->add_option("--cv-shape", wc_shape, "linear or quadratic")->check(CLI::IsMember({"linear", "quadratic"}));
  worst->add_option("--align", wc.align, "Time alignment in seconds")->capture_default_str();
  worst->add_option("--out", wc_out, "Instance file")->required();

  SyntheticParams syn;
  std::string syn_preset;
  std::string syn_out;
  std::optional<int> syn_trips;
  auto* synthetic = generate->add_subcommand("synthetic", "Random instance");
  synthetic->add_option("--preset", syn_preset, "Instance table row A..P");
  synthetic->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
  synthetic->add_option("--trips", syn_trips, "Number of trips");
  synthetic->add_option("--electric-types", syn.electric_types)->capture_default_str();
  synthetic->add_option("--non-electric-types", syn.non_electric_types)->capture_default_str();
  synthetic->add_option("--depots", syn.depots)->capture_default_str();
  synthetic->add_option("--chargers", syn.chargers)->capture_default_str();
  synthetic->add_option("--slots", syn.charge_slots, "Charge slots in total")->capture_default_str();
  synthetic->add_option("--grid-points", syn.grid_points)->capture_default_str();
  synthetic->add_option("--grid-max-kw", syn.grid_max_kw, "Base grid limit per grid point");
  synthetic->add_option("--out", syn_out, "Instance file")->required();

  std::string instance_path;
  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Build, solve, decode and validate");
  solve->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  solve_flags.attach(solve);

  SolveFlags sweep_flags;
  std::string m_grid = "2,3,4,10";
  std::string theta_grid = "60,300,600";
  int workers = 1;
  std::int64_t reference_theta = 60;
  std::string reference_path;
  bool no_reference = false;
  auto* sweep = app.add_subcommand("sweep", "Discretization sweep over m and theta");
  sweep->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  sweep_flags.attach(sweep, false);
  sweep->add_option("--m-grid", m_grid, "Comma-separated segment counts")->capture_default_str();
  sweep->add_option("--theta-grid", theta_grid, "Comma-separated time steps")->capture_default_str();
  sweep->add_option("--workers", workers, "Concurrent cells")->capture_default_str();
  sweep->add_option("--reference-theta", reference_theta, "Step of the linear-charging reference solve")
      ->capture_default_str();
  sweep->add_option("--reference", reference_path, "Reference schedule judged under every cell");
  sweep->add_flag("--no-reference", no_reference, "Skip the reference schedule");

  SolveFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "Underestimator vs overestimator");
  compare->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  compare_flags.attach(compare, false);

  std::string schedule_path;
  std::string mode = "exact";
  int val_segments = 4;
  std::optional<std::int64_t> approx_theta;
  double soc_floor = 0.0;
  int val_threads = 1;
  std::string val_out;
  auto* validate = app.add_subcommand("validate", "Validate a schedule against the exact curve");
  validate->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  validate->add_option("schedule", schedule_path)->required()->check(CLI::ExistingFile);
  validate->add_option("--mode", mode, "exact, approx-under or approx-over")
      ->check(CLI::IsMember({"exact", "approx-under", "approx-over"}))
      ->capture_default_str();
  validate->add_option("--segments", val_segments)->capture_default_str();
  validate->add_option("--approx-theta", approx_theta, "Step of the approximate domain");
  validate->add_option("--soc-floor", soc_floor, "Minimum soc on top of the energy to reach a charger")
      ->capture_default_str();
  validate->add_option("--threads", val_threads)->capture_default_str();
  validate->add_option("--out", val_out, "Output directory")->required();

  SolveFlags peak_flags;
  std::string caps = "1.0,0.75,0.5,0.25";
  auto* peak = app.add_subcommand("peak-shave", "Solve under several grid caps and compare");
  peak->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  peak_flags.attach(peak, false);
  peak->add_option("--caps", caps, "Cap fractions of the uncapped peak")->capture_default_str();

  std::int64_t stats_theta = 300;
  int stats_lookahead = 1;
  bool stats_parking = false;
  std::string stats_out;
  auto* stats = app.add_subcommand("stats", "Graph node and arc counts as CSV");
  stats->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  stats->add_option("--theta", stats_theta)->capture_default_str();
  stats->add_option("--lookahead", stats_lookahead)->capture_default_str();
  stats->add_flag("--parking", stats_parking);
  stats->add_option("--out", stats_out, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  return guarded([&] {
    if (*worst) {
      wc.cv_shape = cv_shape_from_string(wc_shape);
      return cmd_generate_worst_case(wc, wc_variant, wc_out);
    }
    if (*synthetic) {
      SyntheticParams p = syn_preset.empty() ? syn : SyntheticParams::preset(syn_preset);
      p.seed = syn.seed;
      if (syn_trips) p.trips = *syn_trips;
      if (!syn_preset.empty() && syn.grid_max_kw) p.grid_max_kw = syn.grid_max_kw;
      return cmd_generate_synthetic(p, syn_preset, syn_out);
    }
    if (*solve) return cmd_solve(instance_path, solve_flags);
    if (*sweep) {
      return cmd_sweep(instance_path, sweep_flags, m_grid, theta_grid, workers, reference_theta, reference_path,
                       no_reference);
    }
    if (*compare) return cmd_compare(instance_path, compare_flags);
    if (*validate) {
      return cmd_validate(instance_path, schedule_path, mode, val_segments, approx_theta, soc_floor, val_threads,
                          val_out);
    }
    if (*peak) return cmd_peak_shave(instance_path, peak_flags, caps);
    if (*stats) return cmd_stats(instance_path, stats_theta, stats_lookahead, stats_parking, stats_out);
    return kExitInput;
  });
}

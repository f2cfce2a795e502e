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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "ebsched/error.hpp"
#include "ebsched/pipeline.hpp"

namespace ebsched {
namespace {

std::string cell_dir(const std::string& base, const std::string& name) {
  return base.empty() ? std::string() : (std::filesystem::path(base) / name).string();
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

SweepRow run_cell(const Instance& inst, const SweepOptions& opt, const std::optional<Schedule>& reference, int m,
                  std::int64_t theta) {
  SweepRow row;
  row.segments = m;
  row.theta = theta;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (reference) {
      ValidationOptions v;
      v.mode = opt.base.estimator == EstimatorKind::kUnder ? ValidationMode::kApproxUnder : ValidationMode::kApproxOver;
      v.segments = m;
      v.approx_theta = theta;
      v.curve_options = opt.base.curve;
      row.reference_feasible = validate_schedule(inst, *reference, v).weakly_feasible();
    }
    SolveOptions o = opt.base;
    o.theta = theta;
    o.segments = m;
    o.validate = false;
    o.solver.work_dir = cell_dir(opt.base.solver.work_dir, "m" + std::to_string(m) + "_theta" + std::to_string(theta));
    const SolveOutcome r = run_solve(inst, o);
    row.status = to_string(r.raw.status);
    if (r.schedule) row.courses = static_cast<int>(r.schedule->courses.size());
    if (r.raw.has_incumbent) row.objective = r.raw.objective;
    row.bound = r.raw.bound;
    if (!row.bound && r.raw.status == SolveStatus::kOptimal && row.objective) row.bound = row.objective;
    if (row.objective && row.bound && *row.objective != 0.0) {
      row.gap = (*row.objective - *row.bound) / std::abs(*row.objective);
    }
  } catch (const Error& e) {
    row.status = "error";
    row.error = e.what();
  }
  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

SweepResult discretization_sweep(const Instance& inst, const SweepOptions& opt) {
  SweepResult result;
  result.reference = opt.reference;
  if (!result.reference && opt.compute_reference) {
    SolveOptions ref = opt.base;
    ref.theta = opt.reference_theta;
    ref.linear_charging = true;
    ref.validate = false;
    ref.solver.work_dir = cell_dir(opt.base.solver.work_dir, "reference");
    try {
      SolveOutcome r = run_solve(inst, ref);
      if (r.schedule) {
        result.reference = std::move(r.schedule);
      } else {
        result.reference_error = "reference solve ended with status " + to_string(r.raw.status);
      }
    } catch (const Error& e) {
      result.reference_error = e.what();
    }
  }

  std::vector<std::pair<int, std::int64_t>> cells;
  for (int m : opt.segments) {
    for (std::int64_t theta : opt.thetas) cells.emplace_back(m, theta);
  }
  result.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      result.rows[i] = run_cell(inst, opt, result.reference, cells[i].first, cells[i].second);
    }
  };
  const int width = std::clamp(opt.workers, 1, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < width; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return result;
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "m,theta,fs,courses,objective,bound,gap,status,wall_seconds,error\n";
  for (const auto& r : result.rows) {
    const std::string fs = r.reference_feasible ? (*r.reference_feasible ? "yes" : "no") : "";
    out << r.segments << ',' << r.theta << ',' << fs << ',' << r.courses << ',' << fmt(r.objective) << ','
        << fmt(r.bound) << ',' << fmt(r.gap) << ',' << r.status << ',' << fmt(r.wall_seconds) << ','
        << csv_escape(r.error) << '\n';
  }
}

std::optional<double> geometric_mean_gap(const std::vector<SweepRow>& rows, double floor) {
  double log_sum = 0.0;
  int n = 0;
  for (const auto& r : rows) {
    if (!r.gap) continue;
    log_sum += std::log(std::max(*r.gap, floor));
    ++n;
  }
  if (n == 0) return std::nullopt;
  return std::exp(log_sum / n);
}

}  // namespace ebsched

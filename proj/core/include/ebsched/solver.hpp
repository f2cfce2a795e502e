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

#ifndef EBSCHED_SOLVER_HPP_
#define EBSCHED_SOLVER_HPP_

// Bridge to an external MILP solver run as a subprocess.

#include <optional>
#include <string>
#include <unordered_map>

#include "ebsched/milp.hpp"

namespace ebsched {

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kUnbounded, kTimeLimit, kUnknown };

std::string to_string(SolveStatus status);
SolveStatus solve_status_from_string(const std::string& text);

struct RawSolution {
  SolveStatus status = SolveStatus::kUnknown;
  bool has_incumbent = false;
  double objective = 0.0;
  std::optional<double> bound;
  std::unordered_map<std::string, double> values;
  double wall_seconds = 0.0;
  std::string diagnostics;

  double value(const std::string& name) const;  // 0 when absent
};

// Environment variable that overrides the configured command template.
inline constexpr const char* kSolverCommandEnv = "EBSCHED_SOLVER_CMD";

struct SolverConfig {
  // Placeholders: {model} {solution} {timelimit} {threads}.
  std::string command;
  double time_limit = 600.0;
  int threads = 1;
  // Extra wall-clock allowance before the subprocess is killed.
  double grace_seconds = 30.0;
  bool relax = false;  // solve the LP relaxation
  ModelFormat format = ModelFormat::kLp;
  // Directory for model, solution and log files; a temporary one if empty.
  std::string work_dir;
  bool keep_files = true;
};

// Resolves the command: environment override, then config.command.
std::string resolve_solver_command(const std::string& configured);
std::string expand_command(const std::string& templ, const std::string& model, const std::string& solution,
                           double time_limit, int threads);

// Runs the solver on an existing model file.
RawSolution solve_external(const std::string& model_path, const SolverConfig& config);
// Emits the model into the work directory, then solves it.
RawSolution solve_external(const MilpModel& model, const SolverConfig& config);

// Solution-file parsers; the dialect is chosen from the extension (.xml or
// .sol with an XML prolog selects the XML parser).
RawSolution parse_solution_file(const std::string& path);
RawSolution parse_name_value_solution(const std::string& text);
RawSolution parse_xml_solution(const std::string& text);

}  // namespace ebsched

#endif  // EBSCHED_SOLVER_HPP_

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

#include "ebsched/solver.hpp"

#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

namespace fs = std::filesystem;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string tail(const std::string& text, std::size_t max_chars = 4000) {
  return text.size() <= max_chars ? text : text.substr(text.size() - max_chars);
}

double parse_double(const std::string& token, const std::string& context) {
  const std::string t = lower(token);
  if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  if (t == "-inf" || t == "-infinity") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') throw DecodeError("bad number '" + token + "' in " + context);
  return v;
}

struct ChildResult {
  bool timed_out = false;
  int exit_code = 0;
  bool signaled = false;
};

ChildResult run_child(const std::string& command, const std::string& log_path, double deadline_seconds) {
  const pid_t pid = fork();
  if (pid < 0) throw SolverError(SolverError::Kind::kIo, "fork failed", command);
  if (pid == 0) {
    setpgid(0, 0);
    const int fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      dup2(fd, STDOUT_FILENO);
      dup2(fd, STDERR_FILENO);
      close(fd);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  const auto start = std::chrono::steady_clock::now();
  ChildResult result;
  int status = 0;
  while (true) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) throw SolverError(SolverError::Kind::kIo, "waitpid failed", command);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > deadline_seconds) {
      result.timed_out = true;
      kill(-pid, SIGTERM);
      for (int i = 0; i < 200 && waitpid(pid, &status, WNOHANG) == 0; ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
      if (waitpid(pid, &status, WNOHANG) == 0) {
        kill(-pid, SIGKILL);
        waitpid(pid, &status, 0);
      }
      return result;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.signaled = true;
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kTimeLimit: return "time-limit";
    case SolveStatus::kUnknown: return "unknown";
  }
  return "unknown";
}

SolveStatus solve_status_from_string(const std::string& text) {
  std::string t = lower(text);
  std::replace(t.begin(), t.end(), '_', '-');
  std::replace(t.begin(), t.end(), ' ', '-');
  if (t.find("infeasible") != std::string::npos) return SolveStatus::kInfeasible;
  if (t.find("unbounded") != std::string::npos) return SolveStatus::kUnbounded;
  if (t.find("time-limit") != std::string::npos || t.find("timelimit") != std::string::npos) {
    return SolveStatus::kTimeLimit;
  }
  if (t.find("optimal") != std::string::npos) return SolveStatus::kOptimal;
  if (t.find("feasible") != std::string::npos) return SolveStatus::kFeasible;
  return SolveStatus::kUnknown;
}

double RawSolution::value(const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? 0.0 : it->second;
}

std::string resolve_solver_command(const std::string& configured) {
  if (const char* env = std::getenv(kSolverCommandEnv); env != nullptr && *env != '\0') return env;
  if (configured.empty()) {
    throw SolverError(SolverError::Kind::kNotFound,
                      std::string("no solver command configured (set ") + kSolverCommandEnv + " or --solver-cmd)", "");
  }
  return configured;
}

std::string expand_command(const std::string& templ, const std::string& model, const std::string& solution,
                           double time_limit, int threads) {
  std::ostringstream limit;
  limit << time_limit;
  const std::pair<std::string, std::string> subs[] = {
      {"{model}", shell_quote(model)},
      {"{solution}", shell_quote(solution)},
      {"{timelimit}", limit.str()},
      {"{threads}", std::to_string(threads)},
  };
  std::string out = templ;
  for (const auto& [key, value] : subs) {
    for (std::size_t pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos + value.size())) {
      out.replace(pos, key.size(), value);
    }
  }
  return out;
}

RawSolution parse_name_value_solution(const std::string& text) {
  RawSolution sol;
  bool status_seen = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key) || key[0] == '#') continue;
    std::string rest;
    std::getline(fields, rest);
    rest.erase(0, rest.find_first_not_of(" \t"));
    rest.erase(rest.find_last_not_of(" \t\r") + 1);
    const std::string context = "solution line " + std::to_string(line_no);
    if (key == "status") {
      sol.status = solve_status_from_string(rest);
      status_seen = true;
    } else if (key == "objective") {
      sol.objective = parse_double(rest, context);
      sol.has_incumbent = true;
    } else if (key == "bound") {
      if (lower(rest) != "none" && !rest.empty()) sol.bound = parse_double(rest, context);
    } else {
      if (rest.empty() || rest.find_first_of(" \t") != std::string::npos) {
        throw DecodeError("expected 'name value' on " + context);
      }
      sol.values[key] = parse_double(rest, context);
    }
  }
  if (!status_seen) throw DecodeError("solution file lacks a status line");
  return sol;
}

RawSolution parse_xml_solution(const std::string& text) {
  RawSolution sol;
  auto attribute = [](const std::string& element, const std::string& name) -> std::optional<std::string> {
    const std::regex re("\\b" + name + "=\"([^\"]*)\"");
    std::smatch m;
    if (std::regex_search(element, m, re)) return m[1].str();
    return std::nullopt;
  };
  std::smatch header;
  if (std::regex_search(text, header, std::regex("<header\\b[^>]*>"))) {
    const std::string h = header[0].str();
    if (auto s = attribute(h, "solutionStatusString")) sol.status = solve_status_from_string(*s);
    if (auto o = attribute(h, "objectiveValue")) {
      sol.objective = parse_double(*o, "xml header");
      sol.has_incumbent = true;
    }
    for (const char* key : {"bestBound", "MIPBestBound", "bound"}) {
      if (auto b = attribute(h, key)) {
        sol.bound = parse_double(*b, "xml header");
        break;
      }
    }
  } else {
    throw DecodeError("xml solution lacks a header element");
  }
  const std::regex variable("<variable\\b[^>]*>");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), variable); it != std::sregex_iterator(); ++it) {
    const std::string v = (*it)[0].str();
    auto name = attribute(v, "name");
    auto value = attribute(v, "value");
    if (!name || !value) throw DecodeError("xml variable without name or value");
    sol.values[*name] = parse_double(*value, "xml variable " + *name);
  }
  return sol;
}

RawSolution parse_solution_file(const std::string& path) {
  if (!fs::exists(path)) throw DecodeError("solution file " + path + " does not exist");
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool xml = fs::path(path).extension() == ".xml" || (first != std::string::npos && text[first] == '<');
  return xml ? parse_xml_solution(text) : parse_name_value_solution(text);
}

RawSolution solve_external(const std::string& model_path, const SolverConfig& config) {
  const std::string templ = resolve_solver_command(config.command);
  const std::string solution_path = model_path + ".sol";
  const std::string log_path = model_path + ".log";
  std::error_code ec;
  fs::remove(solution_path, ec);
  const std::string command = expand_command(templ, model_path, solution_path, config.time_limit, config.threads);

  const auto start = std::chrono::steady_clock::now();
  const ChildResult child = run_child(command, log_path, std::max(0.0, config.time_limit) + config.grace_seconds);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string log = tail(read_file(log_path));

  if (child.timed_out) {
    RawSolution sol;
    if (fs::exists(solution_path)) {
      try {
        sol = parse_solution_file(solution_path);
      } catch (const DecodeError&) {
        sol = RawSolution{};
      }
    }
    sol.status = SolveStatus::kTimeLimit;
    sol.wall_seconds = wall;
    sol.diagnostics = "solver killed after exceeding the wall-clock limit\n" + log;
    return sol;
  }
  if (child.exit_code == 127 || child.exit_code == 126) {
    throw SolverError(SolverError::Kind::kNotFound, "solver command could not be executed", command, log);
  }
  if (child.exit_code != 0) {
    throw SolverError(SolverError::Kind::kCrashed,
                      "solver exited with status " + std::to_string(child.exit_code), command, log);
  }
  if (!fs::exists(solution_path)) {
    throw SolverError(SolverError::Kind::kBadOutput, "solver wrote no solution file", command, log);
  }
  RawSolution sol;
  try {
    sol = parse_solution_file(solution_path);
  } catch (const DecodeError& e) {
    throw SolverError(SolverError::Kind::kBadOutput, e.what(), command, log);
  }
  sol.wall_seconds = wall;
  sol.diagnostics = log;
  return sol;
}

RawSolution solve_external(const MilpModel& model, const SolverConfig& config) {
  fs::path dir = config.work_dir;
  bool temporary = false;
  if (dir.empty()) {
    std::string templ = (fs::temp_directory_path() / "ebsched-XXXXXX").string();
    if (mkdtemp(templ.data()) == nullptr) {
      throw SolverError(SolverError::Kind::kIo, "cannot create a temporary directory", "");
    }
    dir = templ;
    temporary = true;
  } else {
    fs::create_directories(dir);
  }
  const std::string model_path =
      (dir / (config.format == ModelFormat::kLp ? "model.lp" : "model.mps")).string();
  emit_model(model, config.format, model_path, config.relax);
  RawSolution sol;
  try {
    sol = solve_external(model_path, config);
  } catch (...) {
    if (temporary && !config.keep_files) fs::remove_all(dir);
    throw;
  }
  if (temporary && !config.keep_files) fs::remove_all(dir);
  return sol;
}

}  // namespace ebsched

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

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ebsched/error.hpp"
#include "ebsched/solver.hpp"
#include "fixtures.hpp"

namespace ebsched {
namespace {

class SolverTest : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv(kSolverCommandEnv);
    dir_ = fixtures::temp_dir("solver");
    model_ = dir_ + "/model.lp";
    std::ofstream(model_) << "Minimize\n obj: x\nEnd\n";
  }
  void TearDown() override {
    unsetenv(kSolverCommandEnv);
    std::filesystem::remove_all(dir_);
  }
  SolverConfig config(const std::string& command) {
    SolverConfig c;
    c.command = command;
    c.time_limit = 5.0;
    c.grace_seconds = 1.0;
    return c;
  }
  SolverError::Kind failure(const std::string& command) {
    try {
      solve_external(model_, config(command));
    } catch (const SolverError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no SolverError for " << command;
    return SolverError::Kind::kIo;
  }

  std::string dir_;
  std::string model_;
};

TEST(SolverStatus, Strings) {
  EXPECT_EQ(solve_status_from_string("Optimal"), SolveStatus::kOptimal);
  EXPECT_EQ(solve_status_from_string("INFEASIBLE"), SolveStatus::kInfeasible);
  EXPECT_EQ(solve_status_from_string("time_limit reached"), SolveStatus::kTimeLimit);
  EXPECT_EQ(solve_status_from_string("integer feasible"), SolveStatus::kFeasible);
  EXPECT_EQ(solve_status_from_string("who knows"), SolveStatus::kUnknown);
  for (auto s : {SolveStatus::kOptimal, SolveStatus::kFeasible, SolveStatus::kInfeasible, SolveStatus::kUnbounded,
                 SolveStatus::kTimeLimit, SolveStatus::kUnknown}) {
    EXPECT_EQ(solve_status_from_string(to_string(s)), s);
  }
}

TEST(SolverParse, NameValue) {
  const auto s = parse_name_value_solution("# comment\nstatus optimal\nobjective 12.5\nbound 12\nx_000001_00 1\ny_000001 0.25\n");
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_TRUE(s.has_incumbent);
  EXPECT_DOUBLE_EQ(s.objective, 12.5);
  ASSERT_TRUE(s.bound);
  EXPECT_DOUBLE_EQ(*s.bound, 12.0);
  EXPECT_DOUBLE_EQ(s.value("y_000001"), 0.25);
  EXPECT_EQ(s.value("missing"), 0.0);

  const auto none = parse_name_value_solution("status infeasible\nbound none\n");
  EXPECT_FALSE(none.has_incumbent);
  EXPECT_FALSE(none.bound);
  EXPECT_THROW(parse_name_value_solution("objective 1\n"), DecodeError);
  EXPECT_THROW(parse_name_value_solution("status optimal\nx 1 2\n"), DecodeError);
  EXPECT_THROW(parse_name_value_solution("status optimal\nx abc\n"), DecodeError);
}

TEST(SolverParse, Xml) {
  const auto s = parse_xml_solution(
      "<?xml version=\"1.0\"?><CPLEXSolution><header objectiveValue=\"3.5\" solutionStatusString=\"integer optimal solution\" "
      "MIPBestBound=\"3.25\"/><variables><variable name=\"x_000000_00\" index=\"0\" value=\"1\"/></variables></CPLEXSolution>");
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.objective, 3.5);
  EXPECT_DOUBLE_EQ(*s.bound, 3.25);
  EXPECT_DOUBLE_EQ(s.value("x_000000_00"), 1.0);
  EXPECT_THROW(parse_xml_solution("<root/>"), DecodeError);
}

TEST(SolverCommand, ExpansionQuotesPaths) {
  EXPECT_EQ(expand_command("s {model} {solution} -t {timelimit} -j {threads}", "/a b/m.lp", "it's.sol", 60, 4),
            "s '/a b/m.lp' 'it'\\''s.sol' -t 60 -j 4");
}

TEST_F(SolverTest, EnvironmentOverridesConfiguredCommand) {
  EXPECT_THROW(resolve_solver_command(""), SolverError);
  EXPECT_EQ(resolve_solver_command("cfg"), "cfg");
  setenv(kSolverCommandEnv, "env", 1);
  EXPECT_EQ(resolve_solver_command("cfg"), "env");
}

TEST_F(SolverTest, FakeSolverRoundTrip) {
  const auto s = solve_external(model_, config("printf 'status optimal\\nobjective 2\\nx 1\\n' > {solution}"));
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.value("x"), 1.0);
}

TEST_F(SolverTest, FailureKinds) {
  EXPECT_EQ(failure("/nonexistent/solver {model}"), SolverError::Kind::kNotFound);
  EXPECT_EQ(failure("echo boom >&2; exit 3"), SolverError::Kind::kCrashed);
  EXPECT_EQ(failure("true"), SolverError::Kind::kBadOutput);
  EXPECT_EQ(failure("echo 'garbage here now' > {solution}"), SolverError::Kind::kBadOutput);
}

TEST_F(SolverTest, CrashCarriesLogTail) {
  try {
    solve_external(model_, config("echo 'license expired' >&2; exit 9"));
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_NE(e.diagnostics().find("license expired"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("9"), std::string::npos);
  }
}

TEST_F(SolverTest, HangingSolverIsKilled) {
  auto c = config("printf 'status feasible\\nobjective 7\\n' > {solution}; sleep 60");
  c.time_limit = 0.0;
  c.grace_seconds = 0.5;
  const auto start = std::chrono::steady_clock::now();
  const auto s = solve_external(model_, c);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
  EXPECT_EQ(s.status, SolveStatus::kTimeLimit);
  EXPECT_TRUE(s.has_incumbent);
  EXPECT_DOUBLE_EQ(s.objective, 7.0);
}

}  // namespace
}  // namespace ebsched

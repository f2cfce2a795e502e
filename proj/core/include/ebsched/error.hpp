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

#ifndef EBSCHED_ERROR_HPP_
#define EBSCHED_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ebsched {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied data that violates a documented precondition or invariant.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// The CV-phase integrator stalled before reaching the effective full level.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_soc)
      : Error(what), last_soc_(last_soc) {}
  double last_soc() const { return last_soc_; }

 private:
  double last_soc_;
};

// A soc or time argument outside an operator's domain.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Too many segments for distinct breakpoints.
class DegenerateGrid : public Error {
 public:
  using Error::Error;
};

// Instance document does not match the schema. `path` is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Instance parsed but breaks a named invariant.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& invariant, const std::string& what)
      : Error(invariant + ": " + what), invariant_(invariant) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class BuildError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

// The external solver could not be run or its output could not be read.
class SolverError : public Error {
 public:
  enum class Kind { kNotFound, kCrashed, kBadOutput, kIo };
  SolverError(Kind kind, const std::string& what, std::string command,
              std::string diagnostics = {})
      : Error(what),
        kind_(kind),
        command_(std::move(command)),
        diagnostics_(std::move(diagnostics)) {}
  Kind kind() const { return kind_; }
  const std::string& command() const { return command_; }
  const std::string& diagnostics() const { return diagnostics_; }

 private:
  Kind kind_;
  std::string command_;
  std::string diagnostics_;
};

// Schedule references trips, chargers or depots the instance does not know.
class StructureError : public Error {
 public:
  using Error::Error;
};

}  // namespace ebsched

#endif  // EBSCHED_ERROR_HPP_

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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ebsched/error.hpp"
#include "ebsched/milp.hpp"

namespace ebsched {
namespace {

// Shortest decimal form that reads back to the same double.
std::string number(double v) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

class LineWriter {
 public:
  explicit LineWriter(std::ostringstream& out) : out_(out) {}
  void token(const std::string& t) {
    if (width_ + t.size() + 1 > 200) {
      out_ << "\n   ";
      width_ = 3;
    }
    out_ << ' ' << t;
    width_ += t.size() + 1;
  }
  void start(const std::string& head) {
    out_ << head;
    width_ = head.size();
  }
  void end() { out_ << '\n'; }

 private:
  std::ostringstream& out_;
  std::size_t width_ = 0;
};

void write_terms(LineWriter& w, const MilpModel& m, const std::vector<std::pair<int, double>>& terms) {
  if (terms.empty()) {
    w.token("0");
    w.token(m.variables.front().name);
    return;
  }
  for (const auto& [v, c] : terms) {
    w.token(c < 0 ? "-" : "+");
    w.token(number(std::abs(c)));
    w.token(m.variables[static_cast<std::size_t>(v)].name);
  }
}

std::string emit_lp(const MilpModel& m, bool relax) {
  if (m.variables.empty()) throw InvalidInput("cannot emit a model without variables");
  std::ostringstream out;
  out << "\\ ebsched model: " << m.variables.size() << " variables, " << m.rows.size() << " rows\n";
  out << "Minimize\n";
  {
    LineWriter w(out);
    w.start(" obj:");
    std::vector<std::pair<int, double>> terms;
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
      if (m.variables[i].objective != 0.0) terms.emplace_back(static_cast<int>(i), m.variables[i].objective);
    }
    write_terms(w, m, terms);
    w.end();
  }
  out << "Subject To\n";
  for (const auto& r : m.rows) {
    LineWriter w(out);
    w.start(" " + r.name + ":");
    write_terms(w, m, r.terms);
    w.token(r.sense == RowSense::kLe ? "<=" : r.sense == RowSense::kGe ? ">=" : "=");
    w.token(number(r.rhs));
    w.end();
  }
  out << "Bounds\n";
  for (const auto& v : m.variables) {
    if (v.type == VarType::kBinary && !relax) {
      out << " 0 <= " << v.name << " <= 1\n";
    } else if (std::isinf(v.upper)) {
      out << ' ' << v.name << " >= " << number(v.lower) << '\n';
    } else {
      out << ' ' << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << '\n';
    }
  }
  if (!relax) {
    bool header = false;
    for (const auto& v : m.variables) {
      if (v.type != VarType::kBinary) continue;
      if (!header) out << "Binaries\n";
      header = true;
      out << ' ' << v.name << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

std::string emit_mps(const MilpModel& m, bool relax) {
  std::ostringstream out;
  out << "NAME ebsched\nROWS\n N obj\n";
  for (const auto& r : m.rows) {
    out << ' ' << (r.sense == RowSense::kLe ? 'L' : r.sense == RowSense::kGe ? 'G' : 'E') << ' ' << r.name << '\n';
  }
  // Column-major view of the constraint matrix.
  std::vector<std::vector<std::pair<int, double>>> columns(m.variables.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (const auto& [v, c] : m.rows[r].terms) columns[static_cast<std::size_t>(v)].emplace_back(static_cast<int>(r), c);
  }
  out << "COLUMNS\n";
  bool in_integer_block = false;
  int marker = 0;
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    const auto& v = m.variables[i];
    const bool integer = v.type == VarType::kBinary && !relax;
    if (integer != in_integer_block) {
      out << " MARKER" << marker++ << " 'MARKER' " << (integer ? "'INTORG'" : "'INTEND'") << '\n';
      in_integer_block = integer;
    }
    bool wrote = false;
    if (v.objective != 0.0) {
      out << ' ' << v.name << " obj " << number(v.objective) << '\n';
      wrote = true;
    }
    for (const auto& [r, c] : columns[i]) {
      out << ' ' << v.name << ' ' << m.rows[static_cast<std::size_t>(r)].name << ' ' << number(c) << '\n';
      wrote = true;
    }
    if (!wrote) out << ' ' << v.name << " obj 0\n";
  }
  if (in_integer_block) out << " MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (const auto& r : m.rows) {
    if (r.rhs != 0.0) out << " RHS " << r.name << ' ' << number(r.rhs) << '\n';
  }
  out << "BOUNDS\n";
  for (const auto& v : m.variables) {
    if (v.type == VarType::kBinary && !relax) {
      out << " BV BND " << v.name << '\n';
      continue;
    }
    if (v.lower != 0.0) out << " LO BND " << v.name << ' ' << number(v.lower) << '\n';
    if (!std::isinf(v.upper)) out << " UP BND " << v.name << ' ' << number(v.upper) << '\n';
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace

std::string emit_model_string(const MilpModel& model, ModelFormat format, bool relax) {
  return format == ModelFormat::kLp ? emit_lp(model, relax) : emit_mps(model, relax);
}

void emit_model(const MilpModel& model, ModelFormat format, const std::string& path, bool relax) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file " + path);
  out << emit_model_string(model, format, relax);
  if (!out) throw Error("write failed for " + path);
}

ModelFormat model_format_from_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".lp")) return ModelFormat::kLp;
  if (ends_with(".mps")) return ModelFormat::kMps;
  throw InvalidInput("cannot infer model format from '" + path + "' (expected .lp or .mps)");
}

}  // namespace ebsched

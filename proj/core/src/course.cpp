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

#include "ebsched/course.hpp"

#include <cmath>

#include "ebsched/error.hpp"

namespace ebsched {

double ExactIncrement::increment(double soc, double time) const {
  return charge_increment(*curve_, soc, time);
}

double DomainIncrement::increment(double soc, double time) const {
  const int steps = static_cast<int>(std::floor(time / domain_->theta() + 1e-9));
  double y = soc;
  for (int k = 0; k < steps; ++k) y += domain_->max_increment(y);
  return y - soc;
}

double SplineIncrement::increment(double soc, double time) const {
  return spline_->increment(soc, time);
}

std::string to_string(CourseRole role) {
  switch (role) {
    case CourseRole::kDepotStart: return "depot_start";
    case CourseRole::kTripStart: return "trip_start";
    case CourseRole::kTripEnd: return "trip_end";
    case CourseRole::kChargeArrival: return "charge_arrival";
    case CourseRole::kChargeDeparture: return "charge_departure";
    case CourseRole::kDepotEnd: return "depot_end";
  }
  return "unknown";
}

void CourseTrace::add(CourseRole role, std::string label, double consumption) {
  if (elements.empty()) consumption = 0.0;
  elements.push_back({role, std::move(label)});
  consumptions.push_back(consumption);
}

namespace {

const IncrementOperator* pick(const std::vector<const IncrementOperator*>& ops,
                              std::size_t event) {
  if (ops.empty()) return nullptr;
  return ops.size() == 1 ? ops.front() : ops.at(event);
}

}  // namespace

void propagate_course(CourseTrace& trace,
                      const std::vector<const IncrementOperator*>& exact,
                      const std::vector<const IncrementOperator*>& approx) {
  const std::size_t n = trace.elements.size();
  if (n == 0) throw InvalidInput("empty course");
  if (trace.consumptions.size() != n) {
    throw InvalidInput("course needs one consumption entry per element");
  }
  if (trace.elements.front().role != CourseRole::kDepotStart) {
    throw InvalidInput("course must start at a depot");
  }
  std::size_t departures = 0;
  for (const auto& e : trace.elements) departures += e.role == CourseRole::kChargeDeparture;
  if (departures != trace.charge_windows.size()) {
    throw InvalidInput("course needs one charge window per charge departure");
  }
  if (exact.empty()) throw InvalidInput("no exact increment operator");
  if (exact.size() != 1 && exact.size() != departures) {
    throw InvalidInput("need one exact operator per charge event");
  }
  if (approx.size() > 1 && approx.size() != departures) {
    throw InvalidInput("need one approximate operator per charge event");
  }

  trace.soc_exact.assign(n, 0.0);
  trace.soc_approx.assign(n, 0.0);
  trace.eps.assign(n, 0.0);
  trace.sigma.assign(n, 0);
  trace.soc_exact[0] = 1.0;
  trace.soc_approx[0] = 1.0;
  std::size_t event = 0;
  for (std::size_t j = 1; j < n; ++j) {
    double y = trace.soc_exact[j - 1];
    double y_approx = trace.soc_approx[j - 1];
    int sigma = trace.sigma[j - 1];
    if (trace.elements[j].role == CourseRole::kChargeDeparture) {
      const double window = trace.charge_windows[event];
      const auto* ex = pick(exact, event);
      const auto* ap = pick(approx, event);
      if (ap == nullptr) ap = ex;
      y += ex->increment(y, window);
      y_approx += ap->increment(y_approx, window);
      ++sigma;
      ++event;
    }
    trace.soc_exact[j] = y - trace.consumptions[j];
    trace.soc_approx[j] = y_approx - trace.consumptions[j];
    trace.eps[j] = trace.soc_approx[j] - trace.soc_exact[j];
    trace.sigma[j] = sigma;
  }
}

void propagate_course(CourseTrace& trace, const MaxPowerCurve& exact,
                      const IncrementOperator* approx) {
  ExactIncrement ex(exact);
  std::vector<const IncrementOperator*> approx_ops;
  if (approx != nullptr) approx_ops.push_back(approx);
  propagate_course(trace, {&ex}, approx_ops);
}

}  // namespace ebsched

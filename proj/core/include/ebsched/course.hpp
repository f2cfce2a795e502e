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

#ifndef EBSCHED_COURSE_HPP_
#define EBSCHED_COURSE_HPP_

// Charge-state propagation along a single vehicle course under an exact and
// an approximate charge increment operator.

#include <string>
#include <vector>

#include "ebsched/chargemodel.hpp"

namespace ebsched {

// y -> soc gained by charging from y for `time` at maximal admissible rate.
class IncrementOperator {
 public:
  virtual ~IncrementOperator() = default;
  virtual double increment(double soc, double time) const = 0;
};

class ExactIncrement final : public IncrementOperator {
 public:
  explicit ExactIncrement(const MaxPowerCurve& curve) : curve_(&curve) {}
  double increment(double soc, double time) const override;

 private:
  const MaxPowerCurve* curve_;
};

// Steps the domain map floor(time / theta + 1e-9) times.
class DomainIncrement final : public IncrementOperator {
 public:
  explicit DomainIncrement(const IncrementDomainPWL& domain) : domain_(&domain) {}
  double increment(double soc, double time) const override;

 private:
  const IncrementDomainPWL* domain_;
};

class SplineIncrement final : public IncrementOperator {
 public:
  explicit SplineIncrement(const SplineChargeCurve& spline) : spline_(&spline) {}
  double increment(double soc, double time) const override;

 private:
  const SplineChargeCurve* spline_;
};

enum class CourseRole {
  kDepotStart,
  kTripStart,
  kTripEnd,
  kChargeArrival,
  kChargeDeparture,
  kDepotEnd,
};

std::string to_string(CourseRole role);

struct CourseElement {
  CourseRole role;
  std::string label;
};

struct CourseTrace {
  std::vector<CourseElement> elements;
  // consumptions[j] = e(C_{j-1}, C_j); consumptions[0] is unused (0).
  std::vector<double> consumptions;
  // One duration per charge-departure element, in course order.
  std::vector<double> charge_windows;
  std::vector<double> soc_exact;
  std::vector<double> soc_approx;
  std::vector<double> eps;
  std::vector<int> sigma;

  // Appends an element reached by consuming `consumption`.
  void add(CourseRole role, std::string label, double consumption);
  std::size_t recharge_events() const { return charge_windows.size(); }
};

// Fills soc_exact, soc_approx, eps and sigma. `exact[i]` / `approx[i]` act at
// the i-th recharge event; an empty `approx` copies the exact operator.
// Negative soc is recorded, not rejected.
void propagate_course(CourseTrace& trace,
                      const std::vector<const IncrementOperator*>& exact,
                      const std::vector<const IncrementOperator*>& approx);

// Single-curve form: every recharge event uses the same operators.
void propagate_course(CourseTrace& trace, const MaxPowerCurve& exact,
                      const IncrementOperator* approx = nullptr);

}  // namespace ebsched

#endif  // EBSCHED_COURSE_HPP_

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

#ifndef EBSCHED_CHARGEMODEL_HPP_
#define EBSCHED_CHARGEMODEL_HPP_

// CC-CV charging calculus: power profiles, the maximum power charge curve,
// the charge duration / increment operators, and piecewise-linear bounds of
// the per-step charge increment used by the scheduling model.
//
// All soc values are relative to battery capacity. Time is in whatever unit
// the profile rate is expressed in (seconds for instance data).

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ebsched {

inline constexpr double kPointTolerance = 1e-6;

enum class CvShape { kConstant, kLinear, kQuadratic, kTabulated };

std::string to_string(CvShape shape);
CvShape cv_shape_from_string(const std::string& name);

// Maximal admissible charge rate as a function of soc: constant `cc_rate`
// below `cv_break`, then a non-increasing CV branch that reaches zero at
// soc 1. kConstant is the degenerate profile without CV phase (cv_break 1).
class ChargingPowerProfile {
 public:
  struct Knot {
    double soc;
    double rate;
    bool operator==(const Knot&) const = default;
  };

  static ChargingPowerProfile Constant(double rate);
  // f_CV(y) = cc (1 - y) / (1 - y_V).
  static ChargingPowerProfile Linear(double cc_rate, double cv_break);
  // f_CV(y) = cc (1 - u^2), u = (y - y_V) / (1 - y_V). C^1 at y_V.
  static ChargingPowerProfile Quadratic(double cc_rate, double cv_break);
  // Piecewise-linear interpolation of the given CV knots. The knots must
  // start at (cv_break, cc_rate) and end at (1, 0). The declared bound stands
  // in for ||f_CV''||, which a polyline does not have.
  static ChargingPowerProfile Tabulated(double cc_rate, double cv_break,
                                        std::vector<Knot> knots,
                                        double cv_second_derivative_bound);

  double rate(double soc) const;
  // Right derivative of the rate.
  double slope(double soc) const;

  double cc_rate() const { return cc_rate_; }
  double cv_break() const { return cv_break_; }
  CvShape shape() const { return shape_; }
  double cv_second_derivative_bound() const { return cv_second_derivative_bound_; }
  const std::vector<Knot>& knots() const { return knots_; }
  bool has_cv_phase() const { return shape_ != CvShape::kConstant; }
  // Largest |f'| on [0, 1).
  double max_abs_slope() const;

  // Sampled checks of the documented invariants.
  bool is_non_increasing(std::size_t samples = 10001) const;
  bool is_concave(std::size_t samples = 10001, double tolerance = 1e-12) const;

  bool operator==(const ChargingPowerProfile&) const = default;

 private:
  ChargingPowerProfile(CvShape shape, double cc_rate, double cv_break,
                       std::vector<Knot> knots, double bound);

  CvShape shape_;
  double cc_rate_;
  double cv_break_;
  std::vector<Knot> knots_;
  double cv_second_derivative_bound_;
};

struct CurveOptions {
  // soc_cap = 1 - full_tolerance is treated as "full".
  double full_tolerance = 1e-6;
  // Target for the linear-interpolation error of the tabulation.
  double interpolation_tolerance = 1e-9;
  // Optional upper bound on the RK4 step, e.g. theta_min / 64.
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_samples = 8'000'000;
};

// Tabulated solution of zeta' = f(zeta), zeta(0) = 0. The CC phase is exact;
// the CV phase is integrated with fixed-step RK4.
class MaxPowerCurve {
 public:
  struct Sample {
    double time;
    double soc;
  };

  const ChargingPowerProfile& profile() const { return profile_; }
  double t_v() const { return t_v_; }
  double t_full() const { return t_full_; }
  double soc_cap() const { return soc_cap_; }
  double step() const { return step_; }
  std::span<const Sample> samples() const { return samples_; }

  // zeta(t); saturates at soc_cap for t >= t_full.
  double soc_at(double time) const;
  // zeta^{-1}(y) for y in [0, soc_cap].
  double time_at(double soc) const;

 private:
  friend MaxPowerCurve solve_max_power_curve(const ChargingPowerProfile&,
                                             const CurveOptions&);
  explicit MaxPowerCurve(ChargingPowerProfile profile) : profile_(std::move(profile)) {}

  ChargingPowerProfile profile_;
  std::vector<Sample> samples_;
  double t_v_ = 0.0;
  double t_full_ = 0.0;
  double soc_cap_ = 1.0;
  double step_ = 0.0;
  std::size_t cv_begin_ = 0;  // index of (t_v, y_V) in samples_
};

MaxPowerCurve solve_max_power_curve(const ChargingPowerProfile& profile,
                                    const CurveOptions& options = {});

// T(y_s, y_e) = zeta^{-1}(y_e) - zeta^{-1}(y_s). Throws OutOfRange when
// y_e > soc_cap or y_s > y_e.
double charge_duration(const MaxPowerCurve& curve, double soc_start, double soc_end);

// Delta(y, t) = zeta(zeta^{-1}(y) + t) - y, with y + Delta <= soc_cap.
// Arguments above soc_cap give 0; negative soc is looked up at 0.
double charge_increment(const MaxPowerCurve& curve, double soc, double time);

// d/dy Delta(y, t) where it exists (right derivative otherwise).
double charge_increment_slope(const MaxPowerCurve& curve, double soc, double time);

struct SampledIncrement {
  double theta = 0.0;
  std::vector<double> soc;
  std::vector<double> increment;
};

// Dense tabulation of y -> Delta(y, theta) on [0, soc_cap].
SampledIncrement increment_curve_at_step(const MaxPowerCurve& curve, double theta,
                                         std::size_t points = 2001);

enum class EstimatorKind { kUnder, kOver };

std::string to_string(EstimatorKind kind);
EstimatorKind estimator_from_string(const std::string& name);

// phi <= min_j (alpha_j y + beta_j) bounding the per-step increment.
// Segment 0 is flat (alpha = 0) and the slopes strictly decrease.
class IncrementDomainPWL {
 public:
  struct Segment {
    double slope;
    double offset;
  };

  IncrementDomainPWL(double theta, std::vector<Segment> segments,
                     std::vector<double> breakpoints, EstimatorKind kind,
                     double error_bound, double soc_cap);

  double theta() const { return theta_; }
  const std::vector<Segment>& segments() const { return segments_; }
  // Interpolation grid y_0 = 0 < y_1 < ... < y_m = soc_cap.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  EstimatorKind kind() const { return kind_; }
  double error_bound() const { return error_bound_; }
  double soc_cap() const { return soc_cap_; }

  // min_j (alpha_j y + beta_j), unclamped.
  double bound(double soc) const;
  // Admissible increment for one step at maximal rate: clamp(bound, 0, cap - y).
  double max_increment(double soc) const;
  // Left end of each segment on the lower envelope, for plotting.
  std::vector<double> segment_starts() const;

 private:
  double theta_;
  std::vector<Segment> segments_;
  std::vector<double> breakpoints_;
  EstimatorKind kind_;
  double error_bound_;
  double soc_cap_;
};

// Knots y_0 = 0, y_1 = zeta(t_V - theta), then m - 1 equidistant knots on
// [y_1, soc_cap]. m counts segments, including the flat one.
std::vector<double> increment_breakpoints(const MaxPowerCurve& curve, double theta,
                                          int segments);

// Chords through (y_i, Delta(y_i, theta)).
IncrementDomainPWL build_underestimator(const MaxPowerCurve& curve, double theta,
                                        int segments);
// Tangents of Delta(., theta) at the interval midpoints plus phi <= cap - y.
IncrementDomainPWL build_overestimator(const MaxPowerCurve& curve, double theta,
                                       int segments);
IncrementDomainPWL build_estimator(const MaxPowerCurve& curve, double theta,
                                   int segments, EstimatorKind kind);

// Sup over sampled y of |domain.max_increment(y) - Delta(y, theta)|, refined
// locally around the worst samples.
double measured_step_gap(const MaxPowerCurve& curve, const IncrementDomainPWL& domain,
                         std::size_t samples = 20001);

// Sup over y and k = 1..max_steps of the k-step gap between the iterated
// domain map and Delta(y, k theta). This is the max-norm distance between the
// two increment operators restricted to the model's time grid.
double operator_sup_gap(const MaxPowerCurve& curve, const IncrementDomainPWL& domain,
                        int max_steps = -1, std::size_t samples = 4001);

// Piecewise-linear interpolation of a charge curve on a time grid.
class SplineChargeCurve {
 public:
  SplineChargeCurve(std::vector<double> times, std::vector<double> socs);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& socs() const { return socs_; }
  double soc_cap() const { return socs_.back(); }
  double soc_at(double time) const;
  double time_at(double soc) const;
  double increment(double soc, double time) const;

 private:
  std::vector<double> times_;
  std::vector<double> socs_;
};

// Interpolant of zeta on `grid`; 0 and t_full are added when missing.
// Throws InvalidInput on an unsorted grid or knots outside [0, t_full].
SplineChargeCurve spline_charge_curve(const MaxPowerCurve& curve, std::vector<double> grid);

// Grid {0, t_V, t_V + k (t_full - t_V) / cv_segments ...}.
std::vector<double> cv_spline_grid(const MaxPowerCurve& curve, int cv_segments);

struct OscillationWitness {
  double soc = 0.0;
  double time = 0.0;
  double error = 0.0;  // Delta_spline - Delta_exact
};

struct OscillationResult {
  bool conclusive = false;
  OscillationWitness under;  // most negative error found
  OscillationWitness over;   // most positive error found
};

// Grid search over (y, t) for both signs of the spline-induced increment
// error. Inconclusive when either sign stays within `threshold`.
OscillationResult detect_spline_oscillation(const MaxPowerCurve& curve,
                                            const SplineChargeCurve& spline,
                                            std::size_t grid_resolution = 400,
                                            double threshold = 1e-8);

// Iterates y_i = y_{i-1} + Delta(y_{i-1}, step_i) and compares against
// y_0 + Delta(y_0, sum steps). Returns {iterated, direct}.
std::pair<double, double> compose_steps_check(const MaxPowerCurve& curve, double soc0,
                                              std::span<const double> steps);

void write_curve_csv(const MaxPowerCurve& curve, const std::string& path,
                     std::size_t stride = 1);
void write_segments_csv(const IncrementDomainPWL& domain, const std::string& path);

}  // namespace ebsched

#endif  // EBSCHED_CHARGEMODEL_HPP_

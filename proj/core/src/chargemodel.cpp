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

#include "ebsched/chargemodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "ebsched/error.hpp"

namespace ebsched {
namespace {

constexpr double kSlopeMergeTolerance = 1e-7;

double lerp(double x0, double y0, double x1, double y1, double x) {
  if (x1 == x0) return y1;
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

// Keeps the lines of a concave lower envelope with strictly decreasing
// slopes. Nearly parallel lines (tabulation noise) are replaced by one line
// through the outer (kOver) or inner (kUnder) endpoint values on [0, cap].
std::vector<IncrementDomainPWL::Segment> normalize_segments(
    const std::vector<IncrementDomainPWL::Segment>& raw, EstimatorKind kind, double cap) {
  const auto pick = [kind](double a, double b) {
    return kind == EstimatorKind::kOver ? std::max(a, b) : std::min(a, b);
  };
  std::vector<IncrementDomainPWL::Segment> out;
  for (const auto& s : raw) {
    if (!out.empty()) {
      auto& last = out.back();
      if (std::abs(s.slope - last.slope) <= kSlopeMergeTolerance) {
        const double y0 = pick(last.offset, s.offset);
        const double y1 = pick(last.slope * cap + last.offset, s.slope * cap + s.offset);
        if (out.size() == 1) {
          last.offset = pick(y0, y1);  // the first segment stays flat
        } else {
          last.slope = (y1 - y0) / cap;
          last.offset = y0;
        }
        continue;
      }
      if (s.slope > last.slope) {
        throw InvalidInput(
            "increment curve is not concave; the charging power profile must be concave");
      }
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::string to_string(CvShape shape) {
  switch (shape) {
    case CvShape::kConstant: return "constant";
    case CvShape::kLinear: return "linear";
    case CvShape::kQuadratic: return "quadratic";
    case CvShape::kTabulated: return "tabulated";
  }
  return "unknown";
}

CvShape cv_shape_from_string(const std::string& name) {
  if (name == "constant") return CvShape::kConstant;
  if (name == "linear") return CvShape::kLinear;
  if (name == "quadratic") return CvShape::kQuadratic;
  if (name == "tabulated") return CvShape::kTabulated;
  throw InvalidInput("unknown cv shape '" + name + "'");
}

std::string to_string(EstimatorKind kind) {
  return kind == EstimatorKind::kUnder ? "under" : "over";
}

EstimatorKind estimator_from_string(const std::string& name) {
  if (name == "under") return EstimatorKind::kUnder;
  if (name == "over") return EstimatorKind::kOver;
  throw InvalidInput("unknown estimator '" + name + "' (expected under|over)");
}

// ---------------------------------------------------------------------------
// ChargingPowerProfile

ChargingPowerProfile::ChargingPowerProfile(CvShape shape, double cc_rate, double cv_break,
                                           std::vector<Knot> knots, double bound)
    : shape_(shape),
      cc_rate_(cc_rate),
      cv_break_(cv_break),
      knots_(std::move(knots)),
      cv_second_derivative_bound_(bound) {}

ChargingPowerProfile ChargingPowerProfile::Constant(double rate) {
  require(rate > 0 && std::isfinite(rate), "constant profile needs a positive rate");
  return ChargingPowerProfile(CvShape::kConstant, rate, 1.0, {}, 0.0);
}

ChargingPowerProfile ChargingPowerProfile::Linear(double cc_rate, double cv_break) {
  require(cc_rate > 0 && std::isfinite(cc_rate), "cc_rate must be positive");
  require(cv_break > 0 && cv_break < 1, "cv_break must lie in (0, 1)");
  return ChargingPowerProfile(CvShape::kLinear, cc_rate, cv_break, {}, 0.0);
}

ChargingPowerProfile ChargingPowerProfile::Quadratic(double cc_rate, double cv_break) {
  require(cc_rate > 0 && std::isfinite(cc_rate), "cc_rate must be positive");
  require(cv_break > 0 && cv_break < 1, "cv_break must lie in (0, 1)");
  const double w = 1.0 - cv_break;
  return ChargingPowerProfile(CvShape::kQuadratic, cc_rate, cv_break, {},
                              2.0 * cc_rate / (w * w));
}

ChargingPowerProfile ChargingPowerProfile::Tabulated(double cc_rate, double cv_break,
                                                     std::vector<Knot> knots,
                                                     double cv_second_derivative_bound) {
  require(cc_rate > 0 && std::isfinite(cc_rate), "cc_rate must be positive");
  require(cv_break > 0 && cv_break < 1, "cv_break must lie in (0, 1)");
  require(knots.size() >= 2, "tabulated profile needs at least two knots");
  require(cv_second_derivative_bound >= 0, "cv_second_derivative_bound must be nonnegative");
  require(std::abs(knots.front().soc - cv_break) < 1e-12 &&
              std::abs(knots.front().rate - cc_rate) <= 1e-12 * cc_rate,
          "first knot must be (cv_break, cc_rate)");
  require(std::abs(knots.back().soc - 1.0) < 1e-12 && knots.back().rate == 0.0,
          "last knot must be (1, 0)");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    require(knots[i].soc > knots[i - 1].soc, "knot soc values must strictly increase");
    require(knots[i].rate <= knots[i - 1].rate, "cv rate must be non-increasing");
  }
  return ChargingPowerProfile(CvShape::kTabulated, cc_rate, cv_break, std::move(knots),
                              cv_second_derivative_bound);
}

double ChargingPowerProfile::rate(double soc) const {
  if (shape_ == CvShape::kConstant) return cc_rate_;
  if (soc < cv_break_) return cc_rate_;
  if (soc >= 1.0) return 0.0;
  const double w = 1.0 - cv_break_;
  switch (shape_) {
    case CvShape::kLinear:
      return cc_rate_ * (1.0 - soc) / w;
    case CvShape::kQuadratic: {
      const double u = (soc - cv_break_) / w;
      return cc_rate_ * (1.0 - u * u);
    }
    case CvShape::kTabulated: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), soc,
                                 [](double y, const Knot& k) { return y < k.soc; });
      if (it == knots_.end()) return knots_.back().rate;
      if (it == knots_.begin()) return knots_.front().rate;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      return lerp(lo.soc, lo.rate, hi.soc, hi.rate, soc);
    }
    case CvShape::kConstant:
      break;
  }
  return cc_rate_;
}

double ChargingPowerProfile::slope(double soc) const {
  if (shape_ == CvShape::kConstant || soc < cv_break_ || soc >= 1.0) return 0.0;
  const double w = 1.0 - cv_break_;
  switch (shape_) {
    case CvShape::kLinear:
      return -cc_rate_ / w;
    case CvShape::kQuadratic:
      return -2.0 * cc_rate_ * (soc - cv_break_) / (w * w);
    case CvShape::kTabulated: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), soc,
                                 [](double y, const Knot& k) { return y < k.soc; });
      if (it == knots_.end() || it == knots_.begin()) return 0.0;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      return (hi.rate - lo.rate) / (hi.soc - lo.soc);
    }
    case CvShape::kConstant:
      break;
  }
  return 0.0;
}

double ChargingPowerProfile::max_abs_slope() const {
  const double w = 1.0 - cv_break_;
  switch (shape_) {
    case CvShape::kConstant: return 0.0;
    case CvShape::kLinear: return cc_rate_ / w;
    case CvShape::kQuadratic: return 2.0 * cc_rate_ / w;
    case CvShape::kTabulated: {
      double best = 0.0;
      for (std::size_t i = 1; i < knots_.size(); ++i) {
        best = std::max(best, std::abs((knots_[i].rate - knots_[i - 1].rate) /
                                       (knots_[i].soc - knots_[i - 1].soc)));
      }
      return best;
    }
  }
  return 0.0;
}

bool ChargingPowerProfile::is_non_increasing(std::size_t samples) const {
  double prev = rate(0.0);
  for (std::size_t i = 1; i < samples; ++i) {
    const double y = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double r = rate(y);
    if (r > prev + 1e-15 * cc_rate_) return false;
    prev = r;
  }
  return true;
}

bool ChargingPowerProfile::is_concave(std::size_t samples, double tolerance) const {
  const double h = 1.0 / static_cast<double>(samples - 1);
  for (std::size_t i = 1; i + 1 < samples; ++i) {
    const double y = static_cast<double>(i) * h;
    const double second = rate(y - h) - 2.0 * rate(y) + rate(y + h);
    if (second > tolerance * cc_rate_) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// MaxPowerCurve

MaxPowerCurve solve_max_power_curve(const ChargingPowerProfile& profile,
                                    const CurveOptions& options) {
  require(options.full_tolerance > 0 && options.full_tolerance < 0.5,
          "full_tolerance must lie in (0, 0.5)");
  require(options.interpolation_tolerance > 0, "interpolation_tolerance must be positive");
  MaxPowerCurve curve(profile);
  const double cc = profile.cc_rate();
  const double cap = 1.0 - options.full_tolerance;
  curve.soc_cap_ = cap;
  curve.samples_.push_back({0.0, 0.0});

  if (!profile.has_cv_phase() || profile.cv_break() >= cap) {
    curve.t_full_ = cap / cc;
    curve.t_v_ = curve.t_full_;
    curve.samples_.push_back({curve.t_full_, cap});
    curve.cv_begin_ = 1;
    return curve;
  }

  const double yv = profile.cv_break();
  curve.t_v_ = yv / cc;
  curve.cv_begin_ = 1;
  curve.samples_.push_back({curve.t_v_, yv});

  // Linear interpolation error of zeta is at most h^2 / 8 max|zeta''| and
  // zeta'' = f'(zeta) f(zeta).
  const double curvature = profile.max_abs_slope() * cc;
  double h = curvature > 0 ? std::sqrt(8.0 * options.interpolation_tolerance / curvature)
                           : (1.0 - yv) / cc / 1024.0;
  h = std::min(h, options.max_step);
  curve.step_ = h;

  auto f = [&](double y) { return profile.rate(y); };
  double t = curve.t_v_;
  double y = yv;
  while (true) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * h * k1);
    const double k3 = f(y + 0.5 * h * k2);
    const double k4 = f(y + h * k3);
    const double next = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(next > y)) {
      throw IntegrationError("charge curve integration stalled before reaching soc_cap", y);
    }
    if (next >= cap) {
      const double t_cap = t + h * (cap - y) / (next - y);
      curve.samples_.push_back({t_cap, cap});
      curve.t_full_ = t_cap;
      break;
    }
    t += h;
    y = next;
    curve.samples_.push_back({t, y});
    if (curve.samples_.size() > options.max_samples) {
      throw IntegrationError("charge curve integration exceeded max_samples", y);
    }
  }
  return curve;
}

double MaxPowerCurve::soc_at(double time) const {
  if (time <= 0.0) return 0.0;
  if (time >= t_full_) return soc_cap_;
  if (time <= t_v_) return profile_.cc_rate() * time;
  auto it = std::upper_bound(samples_.begin() + static_cast<std::ptrdiff_t>(cv_begin_),
                             samples_.end(), time,
                             [](double t, const Sample& s) { return t < s.time; });
  if (it == samples_.end()) return soc_cap_;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lerp(lo.time, lo.soc, hi.time, hi.soc, time);
}

double MaxPowerCurve::time_at(double soc) const {
  if (soc <= 0.0) return 0.0;
  if (soc >= soc_cap_) return t_full_;
  if (soc <= profile_.cc_rate() * t_v_) return soc / profile_.cc_rate();
  auto it = std::upper_bound(samples_.begin() + static_cast<std::ptrdiff_t>(cv_begin_),
                             samples_.end(), soc,
                             [](double y, const Sample& s) { return y < s.soc; });
  if (it == samples_.end()) return t_full_;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lerp(lo.soc, lo.time, hi.soc, hi.time, soc);
}

double charge_duration(const MaxPowerCurve& curve, double soc_start, double soc_end) {
  if (soc_end > curve.soc_cap() + 1e-12) {
    throw OutOfRange("charge_duration: target soc " + std::to_string(soc_end) +
                     " exceeds soc_cap " + std::to_string(curve.soc_cap()));
  }
  if (soc_start < 0.0 || soc_start > soc_end) {
    throw OutOfRange("charge_duration: need 0 <= y_s <= y_e");
  }
  return curve.time_at(soc_end) - curve.time_at(soc_start);
}

double charge_increment(const MaxPowerCurve& curve, double soc, double time) {
  if (soc >= curve.soc_cap() || time <= 0.0) return 0.0;
  const double y = std::max(soc, 0.0);
  const double z = curve.soc_at(curve.time_at(y) + time);
  return std::max(0.0, z - y);
}

double charge_increment_slope(const MaxPowerCurve& curve, double soc, double time) {
  if (soc >= curve.soc_cap()) return 0.0;
  const double y = std::max(soc, 0.0);
  const double t_end = curve.time_at(y) + time;
  if (t_end >= curve.t_full()) return -1.0;
  const double z = curve.soc_at(t_end);
  const auto& f = curve.profile();
  return f.rate(z) / f.rate(y) - 1.0;
}

SampledIncrement increment_curve_at_step(const MaxPowerCurve& curve, double theta,
                                         std::size_t points) {
  require(theta > 0, "theta must be positive");
  require(points >= 2, "need at least two sample points");
  SampledIncrement out;
  out.theta = theta;
  out.soc.reserve(points);
  out.increment.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double y = curve.soc_cap() * static_cast<double>(i) / static_cast<double>(points - 1);
    out.soc.push_back(y);
    out.increment.push_back(charge_increment(curve, y, theta));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Increment domain

IncrementDomainPWL::IncrementDomainPWL(double theta, std::vector<Segment> segments,
                                       std::vector<double> breakpoints, EstimatorKind kind,
                                       double error_bound, double soc_cap)
    : theta_(theta),
      segments_(std::move(segments)),
      breakpoints_(std::move(breakpoints)),
      kind_(kind),
      error_bound_(error_bound),
      soc_cap_(soc_cap) {
  require(theta_ > 0, "theta must be positive");
  require(!segments_.empty(), "increment domain needs at least one segment");
  require(segments_.front().slope == 0.0, "first segment must be flat");
  for (std::size_t j = 1; j < segments_.size(); ++j) {
    require(segments_[j].slope < segments_[j - 1].slope,
            "segment slopes must strictly decrease");
  }
}

double IncrementDomainPWL::bound(double soc) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_) best = std::min(best, s.slope * soc + s.offset);
  return best;
}

double IncrementDomainPWL::max_increment(double soc) const {
  const double room = std::max(0.0, soc_cap_ - soc);
  return std::clamp(bound(std::max(soc, 0.0)), 0.0, room);
}

std::vector<double> IncrementDomainPWL::segment_starts() const {
  std::vector<double> starts;
  starts.reserve(segments_.size());
  starts.push_back(0.0);
  for (std::size_t j = 1; j < segments_.size(); ++j) {
    const auto& a = segments_[j - 1];
    const auto& b = segments_[j];
    starts.push_back((b.offset - a.offset) / (a.slope - b.slope));
  }
  return starts;
}

std::vector<double> increment_breakpoints(const MaxPowerCurve& curve, double theta,
                                          int segments) {
  require(theta > 0, "theta must be positive");
  require(segments >= 2, "need at least two segments");
  const double cap = curve.soc_cap();
  const double y1 = curve.soc_at(curve.t_v() - theta);
  std::vector<double> knots{0.0};
  const int chords = segments - 1;
  const double start = y1 > 1e-12 ? y1 : 0.0;
  const double h = (cap - start) / chords;
  if (!(h > 1e-9)) {
    throw DegenerateGrid("segment count " + std::to_string(segments) +
                         " leaves no distinct breakpoints on [" + std::to_string(start) +
                         ", " + std::to_string(cap) + "]");
  }
  if (start > 0.0) knots.push_back(start);
  for (int j = 1; j <= chords; ++j) {
    knots.push_back(j == chords ? cap : start + h * j);
  }
  return knots;
}

namespace {

double domain_error_bound(const MaxPowerCurve& curve, double theta,
                          const std::vector<double>& knots) {
  // Widest CV segment; the flat first segment is exact.
  const double h = knots.back() - knots[knots.size() - 2];
  return theta * h * h / 8.0 * curve.profile().cv_second_derivative_bound();
}

}  // namespace

IncrementDomainPWL build_underestimator(const MaxPowerCurve& curve, double theta,
                                        int segments) {
  const auto knots = increment_breakpoints(curve, theta, segments);
  std::vector<double> values;
  values.reserve(knots.size());
  for (double y : knots) values.push_back(charge_increment(curve, y, theta));

  std::vector<IncrementDomainPWL::Segment> raw{{0.0, values.front()}};
  // With y_1 > 0 the first interval [0, y_1] is already the flat segment.
  const std::size_t first_chord = knots.size() == static_cast<std::size_t>(segments) + 1 ? 1 : 0;
  for (std::size_t i = first_chord; i + 1 < knots.size(); ++i) {
    double slope = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
    if (slope > 0.0) slope = 0.0;
    raw.push_back({slope, values[i] - slope * knots[i]});
  }
  return IncrementDomainPWL(theta, normalize_segments(raw, EstimatorKind::kUnder, curve.soc_cap()), knots,
                            EstimatorKind::kUnder,
                            domain_error_bound(curve, theta, knots), curve.soc_cap());
}

IncrementDomainPWL build_overestimator(const MaxPowerCurve& curve, double theta,
                                       int segments) {
  const auto knots = increment_breakpoints(curve, theta, segments);
  const double cap = curve.soc_cap();
  std::vector<IncrementDomainPWL::Segment> raw{{0.0, charge_increment(curve, 0.0, theta)}};
  const std::size_t first_chord = knots.size() == static_cast<std::size_t>(segments) + 1 ? 1 : 0;
  for (std::size_t i = first_chord; i + 1 < knots.size(); ++i) {
    const double mid = 0.5 * (knots[i] + knots[i + 1]);
    double slope = charge_increment_slope(curve, mid, theta);
    if (slope > 0.0) slope = 0.0;
    if (slope <= -1.0 + 1e-12) continue;  // covered by the cap line
    raw.push_back({slope, charge_increment(curve, mid, theta) - slope * mid});
  }
  raw.push_back({-1.0, cap});
  return IncrementDomainPWL(theta, normalize_segments(raw, EstimatorKind::kOver, cap), knots,
                            EstimatorKind::kOver,
                            domain_error_bound(curve, theta, knots), cap);
}

IncrementDomainPWL build_estimator(const MaxPowerCurve& curve, double theta, int segments,
                                   EstimatorKind kind) {
  return kind == EstimatorKind::kUnder ? build_underestimator(curve, theta, segments)
                                       : build_overestimator(curve, theta, segments);
}

double measured_step_gap(const MaxPowerCurve& curve, const IncrementDomainPWL& domain,
                         std::size_t samples) {
  const double cap = curve.soc_cap();
  const double theta = domain.theta();
  auto gap = [&](double y) {
    return std::abs(domain.max_increment(y) - charge_increment(curve, y, theta));
  };
  double lo = 0.0;
  double hi = cap;
  double best = 0.0;
  for (int round = 0; round < 4; ++round) {
    const double dy = (hi - lo) / static_cast<double>(samples - 1);
    double best_y = lo;
    for (std::size_t i = 0; i < samples; ++i) {
      const double y = lo + dy * static_cast<double>(i);
      const double g = gap(y);
      if (g > best) {
        best = g;
        best_y = y;
      }
    }
    lo = std::max(0.0, best_y - dy);
    hi = std::min(cap, best_y + dy);
    samples = 201;
  }
  return best;
}

double operator_sup_gap(const MaxPowerCurve& curve, const IncrementDomainPWL& domain,
                        int max_steps, std::size_t samples) {
  const double theta = domain.theta();
  if (max_steps < 0) max_steps = static_cast<int>(std::ceil(curve.t_full() / theta)) + 2;
  const double cap = curve.soc_cap();
  auto scan = [&](double y0, double& best, int& best_k) {
    double approx = y0;
    const double t0 = curve.time_at(y0);
    for (int k = 1; k <= max_steps; ++k) {
      approx += domain.max_increment(approx);
      const double exact = curve.soc_at(t0 + k * theta);
      const double g = std::abs(approx - exact);
      if (g > best) {
        best = g;
        best_k = k;
      }
    }
  };
  double best = 0.0;
  double best_y = 0.0;
  const double dy = cap / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double y = dy * static_cast<double>(i);
    double local = 0.0;
    int k = 0;
    scan(y, local, k);
    if (local > best) {
      best = local;
      best_y = y;
    }
  }
  double lo = std::max(0.0, best_y - dy);
  double hi = std::min(cap, best_y + dy);
  for (int round = 0; round < 3; ++round) {
    const double step = (hi - lo) / 200.0;
    double round_y = best_y;
    for (int i = 0; i <= 200; ++i) {
      const double y = lo + step * i;
      double local = 0.0;
      int k = 0;
      scan(y, local, k);
      if (local > best) {
        best = local;
        round_y = y;
      }
    }
    lo = std::max(0.0, round_y - step);
    hi = std::min(cap, round_y + step);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Charge curve spline baseline

SplineChargeCurve::SplineChargeCurve(std::vector<double> times, std::vector<double> socs)
    : times_(std::move(times)), socs_(std::move(socs)) {
  require(times_.size() == socs_.size() && times_.size() >= 2,
          "spline needs matching time and soc knots");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    require(times_[i] > times_[i - 1], "spline times must strictly increase");
    require(socs_[i] > socs_[i - 1], "spline socs must strictly increase");
  }
}

double SplineChargeCurve::soc_at(double time) const {
  if (time <= times_.front()) return socs_.front();
  if (time >= times_.back()) return socs_.back();
  auto it = std::upper_bound(times_.begin(), times_.end(), time);
  const auto i = static_cast<std::size_t>(it - times_.begin());
  return lerp(times_[i - 1], socs_[i - 1], times_[i], socs_[i], time);
}

double SplineChargeCurve::time_at(double soc) const {
  if (soc <= socs_.front()) return times_.front();
  if (soc >= socs_.back()) return times_.back();
  auto it = std::upper_bound(socs_.begin(), socs_.end(), soc);
  const auto i = static_cast<std::size_t>(it - socs_.begin());
  return lerp(socs_[i - 1], times_[i - 1], socs_[i], times_[i], soc);
}

double SplineChargeCurve::increment(double soc, double time) const {
  if (soc >= soc_cap() || time <= 0.0) return 0.0;
  const double y = std::max(soc, 0.0);
  return std::max(0.0, soc_at(time_at(y) + time) - y);
}

SplineChargeCurve spline_charge_curve(const MaxPowerCurve& curve, std::vector<double> grid) {
  const double t_full = curve.t_full();
  const double slack = 1e-9 * std::max(1.0, t_full);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidInput("spline grid must be strictly increasing");
  }
  for (double t : grid) {
    if (t < -slack || t > t_full + slack) {
      throw InvalidInput("spline grid knot " + std::to_string(t) + " outside [0, t_full]");
    }
  }
  if (grid.empty() || grid.front() > slack) grid.insert(grid.begin(), 0.0);
  grid.front() = 0.0;
  if (grid.back() < t_full - slack) grid.push_back(t_full);
  grid.back() = t_full;
  std::vector<double> socs;
  socs.reserve(grid.size());
  for (double t : grid) socs.push_back(curve.soc_at(t));
  return SplineChargeCurve(std::move(grid), std::move(socs));
}

std::vector<double> cv_spline_grid(const MaxPowerCurve& curve, int cv_segments) {
  require(cv_segments >= 1, "need at least one CV segment");
  std::vector<double> grid{0.0};
  if (curve.t_v() < curve.t_full()) grid.push_back(curve.t_v());
  const double span = curve.t_full() - curve.t_v();
  for (int j = 1; j <= cv_segments && span > 0; ++j) {
    grid.push_back(j == cv_segments ? curve.t_full() : curve.t_v() + span * j / cv_segments);
  }
  if (grid.back() < curve.t_full()) grid.push_back(curve.t_full());
  return grid;
}

OscillationResult detect_spline_oscillation(const MaxPowerCurve& curve,
                                            const SplineChargeCurve& spline,
                                            std::size_t grid_resolution, double threshold) {
  require(grid_resolution >= 2, "grid resolution must be at least 2");
  OscillationResult result;
  const double cap = curve.soc_cap();
  const double t_full = curve.t_full();
  const auto n = static_cast<double>(grid_resolution);
  for (std::size_t i = 0; i <= grid_resolution; ++i) {
    const double y = cap * static_cast<double>(i) / n;
    for (std::size_t j = 1; j <= grid_resolution; ++j) {
      const double t = t_full * static_cast<double>(j) / n;
      const double e = spline.increment(y, t) - charge_increment(curve, y, t);
      if (e < result.under.error) result.under = {y, t, e};
      if (e > result.over.error) result.over = {y, t, e};
    }
  }
  result.conclusive = result.under.error < -threshold && result.over.error > threshold;
  return result;
}

std::pair<double, double> compose_steps_check(const MaxPowerCurve& curve, double soc0,
                                              std::span<const double> steps) {
  double iterated = soc0;
  double total = 0.0;
  for (double s : steps) {
    require(s > 0, "time steps must be positive");
    iterated += charge_increment(curve, iterated, s);
    total += s;
  }
  return {iterated, soc0 + charge_increment(curve, soc0, total)};
}

void write_curve_csv(const MaxPowerCurve& curve, const std::string& path, std::size_t stride) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17) << "time,soc\n";
  const auto samples = curve.samples();
  stride = std::max<std::size_t>(stride, 1);
  for (std::size_t i = 0; i < samples.size(); i += stride) {
    out << samples[i].time << ',' << samples[i].soc << '\n';
  }
  if ((samples.size() - 1) % stride != 0) {
    out << samples.back().time << ',' << samples.back().soc << '\n';
  }
}

void write_segments_csv(const IncrementDomainPWL& domain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17) << "y,alpha,beta\n";
  const auto starts = domain.segment_starts();
  for (std::size_t j = 0; j < domain.segments().size(); ++j) {
    out << starts[j] << ',' << domain.segments()[j].slope << ',' << domain.segments()[j].offset
        << '\n';
  }
}

}  // namespace ebsched

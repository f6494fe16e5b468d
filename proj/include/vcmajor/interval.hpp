#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace vcmajor {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A (possibly empty, possibly unbounded) interval of the real line with
// explicit endpoint conventions.
struct Interval {
  double lo = 0.0;
  double hi = -1.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval everything() { return {-kInf, kInf, false, false}; }
  static Interval nothing() { return {0.0, -1.0, true, true}; }
  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
  // {x > a} or {x >= a}
  static Interval upper(double a, bool closed) { return {a, kInf, closed, false}; }
  // {x < b} or {x <= b}
  static Interval lower(double b, bool closed) { return {-kInf, b, false, closed}; }

  bool contains(double x) const {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
  bool is_empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  double length() const { return is_empty() ? 0.0 : hi - lo; }
  Interval intersect(const Interval& other) const;

  std::string describe() const;
};

// f(x) = offset + sum_k weight_k * 1_{I_k}(x). Every member of the canonical
// families is of this form, which keeps means analytic under any
// distribution that knows interval probabilities.
struct StepFunction {
  double offset = 0.0;
  std::vector<std::pair<double, Interval>> terms;

  static StepFunction constant(double c) { return {c, {}}; }
  static StepFunction indicator(const Interval& i) { return {0.0, {{1.0, i}}}; }

  double operator()(double x) const {
    double v = offset;
    for (const auto& [w, i] : terms)
      if (i.contains(x)) v += w;
    return v;
  }

  // (f - shift) * scale
  StepFunction affine(double shift, double scale) const;
};

}  // namespace vcmajor

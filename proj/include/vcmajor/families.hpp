#pragma once

// Canonical function families on the real line, with exact suprema of the
// Rademacher and empirical processes on a realized sample.
//
// Every member is a StepFunction, so means are analytic whenever the
// distribution knows interval probabilities. Suprema are computed through
// the family's extreme points (indicators of half-lines or intervals), after
// grouping tied sample values.

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcmajor/distribution.hpp"
#include "vcmajor/interval.hpp"
#include "vcmajor/rng.hpp"
#include "vcmajor/shatter.hpp"

namespace vcmajor {

struct UnsupportedFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

struct Extremes {
  double min = 0.0;
  double max = 0.0;
  double abs() const { return std::max(-min, max); }
};

class FunctionFamily {
 public:
  virtual ~FunctionFamily() = default;

  virtual std::string name() const = 0;
  virtual Range range() const = 0;
  virtual int declared_weak_dim() const = 0;
  // Dimension of the level sets taken jointly over all levels, when known.
  virtual std::optional<int> declared_vc_major_dim() const { return std::nullopt; }
  virtual std::string dim_note() const = 0;
  virtual bool is_indicator() const { return false; }

  // Members whose level sets realize every level-set trace on x, plus a few
  // random members drawn from rng.
  virtual std::vector<StepFunction> probe_members(std::span<const double> x, Rng& rng) const = 0;
  virtual StepFunction random_member(Rng& rng) const = 0;

  // {f > u} (strict) or {f >= u} over the members. The default is built
  // from probe members with a fixed seed.
  virtual SetFamily level_family(double u, bool strict = true) const;

  // sup_f (E f^2(X))^{1/2} for X ~ dist.
  virtual double sigma_of(const Distribution& dist) const = 0;

  // min and max over f of sum_i w_i f(x_i).
  virtual Extremes weighted_extremes(std::span<const double> x, std::span<const double> w) const = 0;

  // sup_f |sum_i eps_i f(x_i)|
  double sup_rademacher(std::span<const double> x, std::span<const int> eps) const;

  // sup_f |sum_i (f(X_i) - E f(X_i))|. Throws UnsupportedFamily when the
  // sample's laws do not allow an exact computation.
  virtual double sup_empirical(const Sample& s) const;

  // Indicators attaining sup_f [sum_i w_i f(x_i) + c E f(X)] for every w and
  // c under dist (used by center_halve).
  virtual std::vector<Interval> extreme_indicators(std::span<const double> x,
                                                   const Distribution& dist) const;
};

using FamilyPtr = std::shared_ptr<const FunctionFamily>;

// Indicators of {x > a} and {x >= a}, a in [-inf, inf].
class HalfLines final : public FunctionFamily {
 public:
  std::string name() const override { return "halflines"; }
  Range range() const override { return {0.0, 1.0}; }
  int declared_weak_dim() const override { return 1; }
  std::optional<int> declared_vc_major_dim() const override { return 1; }
  std::string dim_note() const override { return "upper half-lines cannot pick the left point of a pair"; }
  bool is_indicator() const override { return true; }
  std::vector<StepFunction> probe_members(std::span<const double> x, Rng& rng) const override;
  StepFunction random_member(Rng& rng) const override;
  SetFamily level_family(double u, bool strict = true) const override;
  double sigma_of(const Distribution& dist) const override;
  Extremes weighted_extremes(std::span<const double> x, std::span<const double> w) const override;
  double sup_empirical(const Sample& s) const override;
  std::vector<Interval> extreme_indicators(std::span<const double> x,
                                           const Distribution& dist) const override;
};

// Indicators of intervals of length <= cap.
class Intervals final : public FunctionFamily {
 public:
  explicit Intervals(double cap = kInf);
  double cap() const { return cap_; }
  std::string name() const override;
  Range range() const override { return {0.0, 1.0}; }
  int declared_weak_dim() const override { return 2; }
  std::optional<int> declared_vc_major_dim() const override { return 2; }
  std::string dim_note() const override { return "intervals cannot pick the outer points of a triple"; }
  bool is_indicator() const override { return true; }
  std::vector<StepFunction> probe_members(std::span<const double> x, Rng& rng) const override;
  StepFunction random_member(Rng& rng) const override;
  SetFamily level_family(double u, bool strict = true) const override;
  // Uniform: sqrt(min(cap, 1)); other laws only when uncapped.
  double sigma_of(const Distribution& dist) const override;
  Extremes weighted_extremes(std::span<const double> x, std::span<const double> w) const override;
  // Uniform on [0,1] only.
  double sup_empirical(const Sample& s) const override;
  std::vector<Interval> extreme_indicators(std::span<const double> x,
                                           const Distribution& dist) const override;

 private:
  double cap_;
};

// Monotone [0,1]-valued step functions on the real line.
class Monotone final : public FunctionFamily {
 public:
  enum class Direction { Nondecreasing, Nonincreasing, Either };
  explicit Monotone(Direction dir);
  Direction direction() const { return dir_; }
  std::string name() const override;
  Range range() const override { return {0.0, 1.0}; }
  int declared_weak_dim() const override { return dir_ == Direction::Either ? 2 : 1; }
  std::optional<int> declared_vc_major_dim() const override { return declared_weak_dim(); }
  std::string dim_note() const override;
  std::vector<StepFunction> probe_members(std::span<const double> x, Rng& rng) const override;
  StepFunction random_member(Rng& rng) const override;
  SetFamily level_family(double u, bool strict = true) const override;
  double sigma_of(const Distribution& dist) const override;
  Extremes weighted_extremes(std::span<const double> x, std::span<const double> w) const override;
  double sup_empirical(const Sample& s) const override;
  std::vector<Interval> extreme_indicators(std::span<const double> x,
                                           const Distribution& dist) const override;

 private:
  Direction dir_;
};

// x -> f(x - t) 1_[0,1](x) for nondecreasing [0,1]-valued f on [0,1]
// (f(y) = 0 for y outside [0,1]) and real t.
class TranslatedMonotone final : public FunctionFamily {
 public:
  std::string name() const override { return "translated-monotone"; }
  Range range() const override { return {0.0, 1.0}; }
  int declared_weak_dim() const override { return 2; }
  std::optional<int> declared_vc_major_dim() const override { return 2; }
  std::string dim_note() const override { return "level sets are intervals of [0,1] (or R below 0)"; }
  std::vector<StepFunction> probe_members(std::span<const double> x, Rng& rng) const override;
  StepFunction random_member(Rng& rng) const override;
  SetFamily level_family(double u, bool strict = true) const override;
  double sigma_of(const Distribution& dist) const override;
  Extremes weighted_extremes(std::span<const double> x, std::span<const double> w) const override;
  double sup_empirical(const Sample& s) const override;
  std::vector<Interval> extreme_indicators(std::span<const double> x,
                                           const Distribution& dist) const override;
};

// The single function x -> c.
class Constant final : public FunctionFamily {
 public:
  explicit Constant(double c = 1.0) : c_(c) {}
  double value() const { return c_; }
  std::string name() const override { return "constant"; }
  Range range() const override { return {std::min(c_, 0.0), std::max(c_, 0.0)}; }
  int declared_weak_dim() const override { return 0; }
  std::optional<int> declared_vc_major_dim() const override { return 1; }
  std::string dim_note() const override { return "one function: every level set is empty or R"; }
  std::vector<StepFunction> probe_members(std::span<const double> x, Rng& rng) const override;
  StepFunction random_member(Rng& rng) const override;
  SetFamily level_family(double u, bool strict = true) const override;
  double sigma_of(const Distribution& dist) const override;
  Extremes weighted_extremes(std::span<const double> x, std::span<const double> w) const override;
  double sup_empirical(const Sample& s) const override;
  std::vector<Interval> extreme_indicators(std::span<const double> x,
                                           const Distribution& dist) const override;

 private:
  double c_;
};

// g_f = (f - E f(X)) / 2 for f in a base family, X ~ dist (iid samples).
class CenteredHalved final : public FunctionFamily {
 public:
  CenteredHalved(FamilyPtr base, Distribution dist);
  const FunctionFamily& base() const { return *base_; }
  std::string name() const override { return "centered-halved:" + base_->name(); }
  Range range() const override;
  int declared_weak_dim() const override;
  std::string dim_note() const override { return "bounded by the VC-major dimension of the base family"; }
  std::vector<StepFunction> probe_members(std::span<const double> x, Rng& rng) const override;
  StepFunction random_member(Rng& rng) const override;
  double sigma_of(const Distribution& dist) const override;
  Extremes weighted_extremes(std::span<const double> x, std::span<const double> w) const override;
  double sup_empirical(const Sample& s) const override;

 private:
  StepFunction transform(const StepFunction& f) const;
  FamilyPtr base_;
  Distribution dist_;
};

// Exact suprema on raw data.
double sup_rademacher_halflines(std::span<const double> x, std::span<const int> eps);
double sup_rademacher_intervals(std::span<const double> x, std::span<const int> eps,
                                std::optional<double> max_length = std::nullopt);
double sup_rademacher_monotone(std::span<const double> x, std::span<const int> eps,
                               Monotone::Direction dir);
// Requires every law of the sample to be uniform on [0,1].
double sup_empirical_intervals(const Sample& s, std::optional<double> max_length = std::nullopt);

// Throws UnavailableMean when dist cannot integrate step functions.
FamilyPtr center_halve(FamilyPtr base, const Distribution& dist);

struct FamilyOptions {
  double cap = kInf;  // intervals-capped
  double constant = 1.0;
  Distribution dist = Distribution::uniform();  // centered-halved
};

// "halflines", "intervals", "intervals-capped", "monotone",
// "monotone-nondecr", "monotone-nonincr", "translated-monotone", "constant",
// "centered-halved:<base>". Throws std::invalid_argument on unknown names.
FamilyPtr make_family(const std::string& name, const FamilyOptions& opt = {});
std::vector<std::string> family_names();

// Evaluate every member on x: out[m][i] = f_m(x_i).
std::vector<std::vector<double>> member_values(std::span<const StepFunction> members,
                                               std::span<const double> x);

}  // namespace vcmajor

#pragma once

// Traces of set families on finite samples: enumeration, shattering,
// sample-based VC dimensions, Sauer counts and Gamma_u estimates.
//
// Indices are 0-based. A trace is stored as a bitmask over sample indices
// (bit i set when X_i belongs to the set); masks are ordered as unsigned
// integers, which is the "lexicographic" order used for tie-breaking.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcmajor/bounds.hpp"
#include "vcmajor/distribution.hpp"
#include "vcmajor/interval.hpp"
#include "vcmajor/rng.hpp"
#include "vcmajor/stats.hpp"

namespace vcmajor {

class FunctionFamily;

inline constexpr int kDefaultTraceCap = 30;

struct CapExceeded : std::length_error {
  using std::length_error::length_error;
};

class TraceSet {
 public:
  TraceSet() = default;
  explicit TraceSet(int n);

  static TraceSet from_indices(int n, const std::vector<std::vector<int>>& sets);

  int n() const { return n_; }
  std::size_t words() const { return words_; }
  std::size_t size() const { return bits_.size() / words_; }

  std::span<const std::uint64_t> mask(std::size_t k) const {
    return {bits_.data() + k * words_, words_};
  }
  bool contains(std::size_t k, int i) const {
    return (bits_[k * words_ + static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u;
  }
  int cardinality(std::size_t k) const;
  std::vector<int> indices(std::size_t k) const;

  void add(std::span<const std::uint64_t> mask);
  void add_indices(std::span<const int> idx);
  // Sort by mask value and drop duplicates.
  void canonicalize();

  bool operator==(const TraceSet& o) const = default;

 private:
  int n_ = 0;
  std::size_t words_ = 1;
  std::vector<std::uint64_t> bits_;
};

int hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
// Numeric comparison of two masks of equal width.
bool mask_less(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// A set family restricted to what can be observed on finite samples.
using SetMember = std::function<bool(double)>;

struct SetFamily {
  std::string name;
  // Members whose traces exhaust the family's traces on the given points.
  std::function<std::vector<SetMember>(std::span<const double>)> enumerate;
  // A random member, for probing the enumerator. May use the points to
  // place endpoints.
  std::function<SetMember(Rng&, std::span<const double>)> random_member;
};

namespace sets {
// {x > a} and {x >= a} for every real a (includes the empty set and R).
SetFamily upper_halflines();
// {x < b} and {x <= b}.
SetFamily lower_halflines();
SetFamily halflines_both();
// Intervals of length <= cap (all intervals when cap is infinite), plus the
// empty set.
SetFamily intervals(double cap = kInf);
// Intervals contained in [lo, hi], plus the empty set.
SetFamily intervals_within(double lo, double hi);
SetFamily single(std::string name, Interval member);
}  // namespace sets

TraceSet trace(const SetFamily& family, std::span<const double> x, int cap = kDefaultTraceCap);
TraceSet trace_members(std::span<const SetMember> members, std::span<const double> x,
                       int cap = kDefaultTraceCap);

// s must be a subset of {0, ..., n-1}.
bool is_shattered(const TraceSet& t, std::span<const int> s);

struct VcDimResult {
  int dim = 0;
  bool exhaustive = true;      // exact on this sample
  std::int64_t checks = 0;     // is_shattered calls spent
  std::vector<int> witness;    // a shattered subset of size dim
};

// Largest shattered index subset. Exhaustive while the candidate count fits
// in the budget, otherwise randomized greedy growth with restarts (a lower
// bound).
VcDimResult vc_dim_on_sample(const TraceSet& t, std::int64_t budget = 2'000'000,
                             std::uint64_t seed = 0);

// sum_{j <= d∧n} C(n,j), saturating at UINT64_MAX.
std::uint64_t sauer_bound(int n, int d);
bool sauer_check(const TraceSet& t, int d);

// Levels between consecutive distinct values achieved by probe members on x,
// plus one level below and one above everything.
std::vector<double> auto_u_grid(const FunctionFamily& ff, std::span<const double> x);

// Level-set traces computed from member values on the sample
// (values[m][i] = f_m(x_i)).
TraceSet level_trace(std::span<const std::vector<double>> values, double u, bool strict = true,
                     int cap = kDefaultTraceCap);
std::vector<double> value_grid(std::span<const std::vector<double>> values);
int weak_vc_dim_from_values(std::span<const std::vector<double>> values,
                            std::span<const double> u_grid, bool strict = true);

// max over u in the grid of the dimension of the level-set traces; a lower
// bound on the weak VC-major dimension.
int weak_vc_dim_estimate(const FunctionFamily& ff, std::span<const double> x,
                         std::span<const double> u_grid, bool strict = true);
int weak_vc_dim_estimate(const FunctionFamily& ff, std::span<const double> x);

// Mean and standard error of log(2 |trace of {f > u}|) over reps samples.
Estimate gamma_u_estimate(const FunctionFamily& ff, double u, const Distribution& dist, int n,
                          int reps, std::uint64_t seed, int cap = kDefaultTraceCap);

// gamma_u_estimate over a grid. Throws std::logic_error when an estimate
// exceeds gamma_bar(n, declared weak dimension).
GammaCurve gamma_curve(const FunctionFamily& ff, const Distribution& dist, int n,
                       std::span<const double> u_grid, int reps, std::uint64_t seed,
                       int cap = kDefaultTraceCap);

// E_eps sup_{T in t} |sum_{i in T} eps_i| by enumerating all 2^n sign
// vectors (n <= 24).
double exact_conditional_rademacher(const TraceSet& t);
// sup_{T in t} |sum_{i in T} eps_i| for one sign vector.
double trace_rademacher_sup(const TraceSet& t, std::span<const int> eps);

// Finite-class maximal inequality applied to the 0/1 vectors of t.
double massart_trace_bound(const TraceSet& t);

}  // namespace vcmajor

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcmajor/interval.hpp"
#include "vcmajor/rng.hpp"

namespace vcmajor {

// Raised when an operation needs analytic probabilities (interval masses,
// means of family members) from a distribution that can only be sampled.
struct UnavailableMean : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Law of a single observation X_i on the real line.
//
// Three analytic kinds are supported: uniform on [0,1], a finite discrete law,
// and a piecewise-linear quantile table (X = Q(U)). A sampler-only kind wraps
// an arbitrary callable and supports nothing but draws.
class Distribution {
 public:
  enum class Kind { Uniform, Discrete, QuantileTable, SamplerOnly };

  static Distribution uniform();
  static Distribution discrete(std::vector<double> atoms, std::vector<double> probs);
  // probs must run from 0 to 1 strictly increasing; values nondecreasing.
  static Distribution quantile_table(std::vector<double> probs, std::vector<double> values);
  static Distribution sampler_only(std::string label, std::function<double(Rng&)> draw);

  Kind kind() const { return kind_; }
  bool is_uniform() const { return kind_ == Kind::Uniform; }
  bool has_analytic_probabilities() const { return kind_ != Kind::SamplerOnly; }
  bool is_nonatomic() const;

  double draw(Rng& rng) const;

  // P(X <= x) and P(X < x).
  double cdf(double x) const;
  double cdf_below(double x) const;
  double prob(const Interval& i) const;
  double mean(const StepFunction& f) const;

  std::string describe() const;

  const std::vector<double>& knots_p() const { return p_; }
  const std::vector<double>& knots_q() const { return q_; }

 private:
  Kind kind_ = Kind::Uniform;
  std::string label_;
  // Discrete: atoms in q_ (sorted, distinct), cumulative mass in p_.
  // Quantile table: p_ in [0,1], q_ nondecreasing.
  std::vector<double> p_;
  std::vector<double> q_;
  std::function<double(Rng&)> sampler_;
};

// Realized data vector together with the law(s) that generated it.
struct Sample {
  std::vector<double> values;
  std::vector<Distribution> laws;  // size 1 when iid, else one per index

  std::size_t size() const { return values.size(); }
  bool iid() const { return laws.size() <= 1; }
  const Distribution& law(std::size_t i) const { return laws.size() == 1 ? laws[0] : laws.at(i); }
};

Sample draw_sample(const Distribution& dist, std::size_t n, Rng& rng);
Sample draw_sample(std::span<const Distribution> per_index, Rng& rng);

}  // namespace vcmajor

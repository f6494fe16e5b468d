#include "vcmajor/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace vcmajor {

Distribution Distribution::uniform() {
  Distribution d;
  d.kind_ = Kind::Uniform;
  d.p_ = {0.0, 1.0};
  d.q_ = {0.0, 1.0};
  return d;
}

Distribution Distribution::discrete(std::vector<double> atoms, std::vector<double> probs) {
  if (atoms.empty() || atoms.size() != probs.size())
    throw std::invalid_argument("discrete law: atoms and probs must be nonempty and aligned");
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return atoms[a] < atoms[b]; });
  Distribution d;
  d.kind_ = Kind::Discrete;
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("discrete law: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("discrete law: probabilities must sum to 1");
  double cum = 0.0;
  for (auto k : order) {
    cum += probs[k] / total;
    if (!d.q_.empty() && d.q_.back() == atoms[k]) {
      d.p_.back() = cum;
    } else {
      d.q_.push_back(atoms[k]);
      d.p_.push_back(cum);
    }
  }
  d.p_.back() = 1.0;
  return d;
}

Distribution Distribution::quantile_table(std::vector<double> probs, std::vector<double> values) {
  if (probs.size() < 2 || probs.size() != values.size())
    throw std::invalid_argument("quantile table: need at least two aligned knots");
  if (probs.front() != 0.0 || probs.back() != 1.0)
    throw std::invalid_argument("quantile table: probabilities must start at 0 and end at 1");
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (!(probs[k] > probs[k - 1])) throw std::invalid_argument("quantile table: probabilities must increase");
    if (!(values[k] >= values[k - 1])) throw std::invalid_argument("quantile table: values must be nondecreasing");
  }
  Distribution d;
  d.kind_ = Kind::QuantileTable;
  d.p_ = std::move(probs);
  d.q_ = std::move(values);
  return d;
}

Distribution Distribution::sampler_only(std::string label, std::function<double(Rng&)> draw) {
  Distribution d;
  d.kind_ = Kind::SamplerOnly;
  d.label_ = std::move(label);
  d.sampler_ = std::move(draw);
  return d;
}

bool Distribution::is_nonatomic() const {
  switch (kind_) {
    case Kind::Uniform: return true;
    case Kind::Discrete: return false;
    case Kind::QuantileTable:
      for (std::size_t k = 1; k < q_.size(); ++k)
        if (q_[k] == q_[k - 1]) return false;
      return true;
    case Kind::SamplerOnly: return false;
  }
  return false;
}

double Distribution::draw(Rng& rng) const {
  const double u = uniform01(rng);
  switch (kind_) {
    case Kind::Uniform: return u;
    case Kind::Discrete: {
      auto it = std::upper_bound(p_.begin(), p_.end(), u);
      if (it == p_.end()) --it;
      return q_[static_cast<std::size_t>(it - p_.begin())];
    }
    case Kind::QuantileTable: {
      auto it = std::upper_bound(p_.begin(), p_.end(), u);
      const auto k = static_cast<std::size_t>(it - p_.begin());  // p_[k-1] <= u < p_[k]
      const double t = (u - p_[k - 1]) / (p_[k] - p_[k - 1]);
      return q_[k - 1] + t * (q_[k] - q_[k - 1]);
    }
    case Kind::SamplerOnly: return sampler_(rng);
  }
  return u;
}

double Distribution::cdf(double x) const {
  switch (kind_) {
    case Kind::Uniform: return std::clamp(x, 0.0, 1.0);
    case Kind::Discrete: {
      auto it = std::upper_bound(q_.begin(), q_.end(), x);
      if (it == q_.begin()) return 0.0;
      return p_[static_cast<std::size_t>(it - q_.begin()) - 1];
    }
    case Kind::QuantileTable: {
      if (x < q_.front()) return 0.0;
      if (x >= q_.back()) return 1.0;
      // largest k with q_[k] <= x; then q_[k] <= x < q_[k+1]
      auto it = std::upper_bound(q_.begin(), q_.end(), x);
      const auto k = static_cast<std::size_t>(it - q_.begin()) - 1;
      const double t = (x - q_[k]) / (q_[k + 1] - q_[k]);
      return p_[k] + t * (p_[k + 1] - p_[k]);
    }
    case Kind::SamplerOnly: throw UnavailableMean("sampler-only law has no analytic cdf: " + label_);
  }
  return 0.0;
}

double Distribution::cdf_below(double x) const {
  switch (kind_) {
    case Kind::Uniform: return std::clamp(x, 0.0, 1.0);
    case Kind::Discrete: {
      auto it = std::lower_bound(q_.begin(), q_.end(), x);
      if (it == q_.begin()) return 0.0;
      return p_[static_cast<std::size_t>(it - q_.begin()) - 1];
    }
    case Kind::QuantileTable: {
      if (x <= q_.front()) return 0.0;
      if (x > q_.back()) return 1.0;
      // smallest k with q_[k] >= x; then q_[k-1] < x <= q_[k]
      auto it = std::lower_bound(q_.begin(), q_.end(), x);
      const auto k = static_cast<std::size_t>(it - q_.begin());
      const double t = (x - q_[k - 1]) / (q_[k] - q_[k - 1]);
      return p_[k - 1] + t * (p_[k] - p_[k - 1]);
    }
    case Kind::SamplerOnly: throw UnavailableMean("sampler-only law has no analytic cdf: " + label_);
  }
  return 0.0;
}

double Distribution::prob(const Interval& i) const {
  if (i.is_empty()) return 0.0;
  const double upper = i.hi_closed ? cdf(i.hi) : cdf_below(i.hi);
  const double lower = i.lo_closed ? cdf_below(i.lo) : cdf(i.lo);
  return std::max(0.0, upper - lower);
}

double Distribution::mean(const StepFunction& f) const {
  double m = f.offset;
  for (const auto& [w, i] : f.terms) m += w * prob(i);
  return m;
}

std::string Distribution::describe() const {
  switch (kind_) {
    case Kind::Uniform: return "uniform[0,1]";
    case Kind::Discrete: return "discrete(" + std::to_string(q_.size()) + " atoms)";
    case Kind::QuantileTable: return "quantile-table(" + std::to_string(q_.size()) + " knots)";
    case Kind::SamplerOnly: return "sampler:" + label_;
  }
  return "?";
}

Sample draw_sample(const Distribution& dist, std::size_t n, Rng& rng) {
  Sample s;
  s.values.resize(n);
  for (auto& v : s.values) v = dist.draw(rng);
  s.laws = {dist};
  return s;
}

Sample draw_sample(std::span<const Distribution> per_index, Rng& rng) {
  Sample s;
  s.values.reserve(per_index.size());
  for (const auto& d : per_index) s.values.push_back(d.draw(rng));
  s.laws.assign(per_index.begin(), per_index.end());
  return s;
}

}  // namespace vcmajor

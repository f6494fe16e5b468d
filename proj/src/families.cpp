#include "vcmajor/families.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace vcmajor {
namespace {

// Sample values sorted and merged, with the weights of tied points summed.
struct Grouped {
  std::vector<double> v;
  std::vector<double> w;
};

Grouped group(std::span<const double> x, std::span<const double> w) {
  if (x.size() != w.size()) throw std::invalid_argument("weights and sample differ in size");
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  Grouped g;
  for (std::size_t i : order) {
    if (!g.v.empty() && g.v.back() == x[i]) {
      g.w.back() += w[i];
    } else {
      g.v.push_back(x[i]);
      g.w.push_back(w[i]);
    }
  }
  return g;
}

Grouped group_counts(std::span<const double> x) {
  const std::vector<double> ones(x.size(), 1.0);
  return group(x, ones);
}

std::vector<double> distinct_sorted(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Sliding-window extremum over indices, keyed by vals[i].
class MonoQueue {
 public:
  MonoQueue(const std::vector<double>& vals, bool keep_max) : vals_(vals), keep_max_(keep_max) {}
  void push(std::size_t i) {
    while (!q_.empty() && (keep_max_ ? vals_[q_.back()] <= vals_[i] : vals_[q_.back()] >= vals_[i])) q_.pop_back();
    q_.push_back(i);
  }
  void drop_before(std::size_t lo) {
    while (!q_.empty() && q_.front() < lo) q_.pop_front();
  }
  bool empty() const { return q_.empty(); }
  double best() const { return vals_[q_.front()]; }

 private:
  const std::vector<double>& vals_;
  bool keep_max_;
  std::deque<std::size_t> q_;
};

Extremes suffix_extremes(const Grouped& g) {
  Extremes e;  // the empty set contributes 0
  double s = 0.0;
  for (std::size_t k = g.w.size(); k-- > 0;) {
    s += g.w[k];
    e.max = std::max(e.max, s);
    e.min = std::min(e.min, s);
  }
  return e;
}

Extremes prefix_extremes(const Grouped& g) {
  Extremes e;
  double s = 0.0;
  for (double w : g.w) {
    s += w;
    e.max = std::max(e.max, s);
    e.min = std::min(e.min, s);
  }
  return e;
}

Extremes merge(Extremes a, Extremes b) { return {std::min(a.min, b.min), std::max(a.max, b.max)}; }

// Max and min window sums over groups j..k with v[k] - v[j] <= cap.
Extremes window_extremes(const Grouped& g, double cap) {
  const std::size_t m = g.v.size();
  std::vector<double> prefix(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) prefix[k + 1] = prefix[k] + g.w[k];
  MonoQueue lowest(prefix, false), highest(prefix, true);
  Extremes e;
  std::size_t lo = 0;
  for (std::size_t k = 0; k < m; ++k) {
    lowest.push(k);
    highest.push(k);
    while (g.v[k] - g.v[lo] > cap) ++lo;
    lowest.drop_before(lo);
    highest.drop_before(lo);
    e.max = std::max(e.max, prefix[k + 1] - lowest.best());
    e.min = std::min(e.min, prefix[k + 1] - highest.best());
  }
  return e;
}

std::vector<double> as_weights(std::span<const int> eps) {
  std::vector<double> w(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] != 1 && eps[i] != -1) throw std::invalid_argument("signs must be +1 or -1");
    w[i] = eps[i];
  }
  return w;
}

bool all_uniform(const Sample& s) {
  return !s.laws.empty() && std::all_of(s.laws.begin(), s.laws.end(), [](const Distribution& d) { return d.is_uniform(); });
}

bool all_analytic(const Sample& s) {
  return !s.laws.empty() &&
         std::all_of(s.laws.begin(), s.laws.end(), [](const Distribution& d) { return d.has_analytic_probabilities(); });
}

// sum_i P_i(I)
double total_mass(const Sample& s, const Interval& I) {
  if (s.iid()) return static_cast<double>(s.size()) * s.law(0).prob(I);
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) m += s.law(i).prob(I);
  return m;
}

bool coin(Rng& rng) { return rademacher(rng) > 0; }

// Random nondecreasing [0,1]-valued step function with up to four jumps.
StepFunction random_monotone(Rng& rng, bool increasing, double lo, double hi) {
  const int k = static_cast<int>(uniform_int(rng, 1, 4));
  std::vector<double> cuts(static_cast<std::size_t>(k));
  for (auto& c : cuts) c = uniform(rng, lo, hi);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> jumps(static_cast<std::size_t>(k) + 1);
  for (auto& j : jumps) j = uniform01(rng) + 1e-3;
  const double total = std::accumulate(jumps.begin(), jumps.end(), 0.0);
  StepFunction f;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double w = jumps[i] / total;
    f.terms.push_back({w, increasing ? Interval::upper(cuts[i], coin(rng)) : Interval::lower(cuts[i], coin(rng))});
  }
  return f;
}

// {f > u} (or >=) for an indicator-valued family whose nontrivial level
// sets form `sets`.
SetFamily indicator_levels(double u, bool strict, SetFamily sets) {
  const bool all = strict ? u < 0.0 : u <= 0.0;
  const bool none = strict ? u >= 1.0 : u > 1.0;
  if (all) return sets::single("everything", Interval::everything());
  if (none) return sets::single("nothing", Interval::nothing());
  return sets;
}

std::vector<Interval> halfline_candidates(std::span<const double> x, bool upper) {
  std::vector<Interval> out{Interval::nothing(), Interval::everything()};
  for (double v : distinct_sorted(x)) {
    out.push_back(upper ? Interval::upper(v, true) : Interval::lower(v, true));
    out.push_back(upper ? Interval::upper(v, false) : Interval::lower(v, false));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FunctionFamily defaults.

SetFamily FunctionFamily::level_family(double u, bool strict) const {
  SetFamily f;
  f.name = name() + "-level";
  f.enumerate = [this, u, strict](std::span<const double> x) {
    Rng rng = make_rng(0, stream::kProbe, x.size());
    std::vector<SetMember> out;
    for (auto& m : probe_members(x, rng))
      out.push_back([m, u, strict](double y) { return strict ? m(y) > u : m(y) >= u; });
    return out;
  };
  f.random_member = [this, u, strict](Rng& rng, std::span<const double>) -> SetMember {
    auto m = random_member(rng);
    return [m, u, strict](double y) { return strict ? m(y) > u : m(y) >= u; };
  };
  return f;
}

double FunctionFamily::sup_rademacher(std::span<const double> x, std::span<const int> eps) const {
  const auto w = as_weights(eps);
  return weighted_extremes(x, w).abs();
}

double FunctionFamily::sup_empirical(const Sample&) const {
  throw UnsupportedFamily(name() + ": no exact empirical supremum");
}

std::vector<Interval> FunctionFamily::extreme_indicators(std::span<const double>, const Distribution&) const {
  throw UnsupportedFamily(name() + ": no indicator extreme points");
}

std::vector<std::vector<double>> member_values(std::span<const StepFunction> members, std::span<const double> x) {
  std::vector<std::vector<double>> out;
  out.reserve(members.size());
  for (const auto& f : members) {
    std::vector<double> row(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) row[i] = f(x[i]);
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Half-lines.

std::vector<StepFunction> HalfLines::probe_members(std::span<const double> x, Rng& rng) const {
  std::vector<StepFunction> out{StepFunction::constant(0.0), StepFunction::constant(1.0)};
  for (double v : distinct_sorted(x)) {
    out.push_back(StepFunction::indicator(Interval::upper(v, true)));
    out.push_back(StepFunction::indicator(Interval::upper(v, false)));
  }
  for (int r = 0; r < 3; ++r) out.push_back(random_member(rng));
  return out;
}

StepFunction HalfLines::random_member(Rng& rng) const {
  return StepFunction::indicator(Interval::upper(uniform(rng, -0.1, 1.1), coin(rng)));
}

SetFamily HalfLines::level_family(double u, bool strict) const {
  return indicator_levels(u, strict, sets::upper_halflines());
}

double HalfLines::sigma_of(const Distribution&) const { return 1.0; }

Extremes HalfLines::weighted_extremes(std::span<const double> x, std::span<const double> w) const {
  return suffix_extremes(group(x, w));
}

double HalfLines::sup_empirical(const Sample& s) const {
  if (!all_analytic(s)) throw UnsupportedFamily("halflines: sample law has no analytic probabilities");
  const auto g = group_counts(s.values);
  const double n = static_cast<double>(s.size());
  double best = 0.0;
  double above = n;  // points >= v_k
  for (std::size_t k = 0; k < g.v.size(); ++k) {
    const double strictly_above = above - g.w[k];
    best = std::max(best, std::abs(above - total_mass(s, Interval::upper(g.v[k], true))));
    best = std::max(best, std::abs(strictly_above - total_mass(s, Interval::upper(g.v[k], false))));
    above = strictly_above;
  }
  return best;
}

std::vector<Interval> HalfLines::extreme_indicators(std::span<const double> x, const Distribution&) const {
  return halfline_candidates(x, true);
}

// ---------------------------------------------------------------------------
// Intervals.

Intervals::Intervals(double cap) : cap_(cap) {
  if (!(cap >= 0.0)) throw std::invalid_argument("intervals: cap must be >= 0");
}

std::string Intervals::name() const { return std::isinf(cap_) ? "intervals" : "intervals-capped"; }

std::vector<StepFunction> Intervals::probe_members(std::span<const double> x, Rng& rng) const {
  std::vector<StepFunction> out{StepFunction::constant(0.0)};
  const auto v = distinct_sorted(x);
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t k = j; k < v.size() && v[k] - v[j] <= cap_; ++k)
      out.push_back(StepFunction::indicator(Interval::closed(v[j], v[k])));
  for (int r = 0; r < 3; ++r) out.push_back(random_member(rng));
  return out;
}

StepFunction Intervals::random_member(Rng& rng) const {
  const double len = uniform01(rng) * std::min(cap_, 1.0);
  const double lo = uniform(rng, 0.0, 1.0 - std::min(len, 1.0));
  return StepFunction::indicator(Interval{lo, lo + len, coin(rng), coin(rng)});
}

SetFamily Intervals::level_family(double u, bool strict) const {
  return indicator_levels(u, strict, sets::intervals(cap_));
}

double Intervals::sigma_of(const Distribution& dist) const {
  if (dist.is_uniform()) return std::sqrt(std::min(cap_, 1.0));
  if (std::isinf(cap_)) return 1.0;
  throw UnsupportedFamily("intervals-capped: sigma is analytic only under the uniform law");
}

Extremes Intervals::weighted_extremes(std::span<const double> x, std::span<const double> w) const {
  return window_extremes(group(x, w), cap_);
}

double Intervals::sup_empirical(const Sample& s) const { return sup_empirical_intervals(s, cap_); }

std::vector<Interval> Intervals::extreme_indicators(std::span<const double> x, const Distribution& dist) const {
  const bool capped = !std::isinf(cap_);
  if (capped && !dist.is_uniform())
    throw UnsupportedFamily("intervals-capped: extreme points need the uniform law");
  const auto v = distinct_sorted(x);
  const std::size_t m = v.size();
  std::vector<Interval> out{Interval::nothing()};
  if (!capped) {
    // Smallest and largest interval with the same trace, for every trace.
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j; k < m; ++k) {
        out.push_back(Interval::closed(v[j], v[k]));
        out.push_back(Interval::open(j == 0 ? -kInf : v[j - 1], k + 1 == m ? kInf : v[k + 1]));
      }
    for (std::size_t a = 0; a <= m; ++a)
      out.push_back(Interval::open(a == 0 ? -kInf : v[a - 1], a == m ? kInf : v[a]));
    return out;
  }
  const double cap = cap_;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j; k < m && v[k] - v[j] <= cap; ++k) {
      out.push_back(Interval::closed(v[j], v[k]));
      const double lb = j == 0 ? std::min(0.0, v[0]) : v[j - 1];
      const double rb = k + 1 == m ? std::max(1.0, v[m - 1]) : v[k + 1];
      const double lo = std::max(lb, v[k] - cap);
      const double hi = std::min(rb, lo + cap);
      out.push_back(Interval{lo, hi, !(j > 0 && lo == lb), !(k + 1 < m && hi == rb)});
    }
  std::vector<double> z{std::min(0.0, m ? v[0] : 0.0)};
  z.insert(z.end(), v.begin(), v.end());
  z.push_back(std::max(1.0, m ? v[m - 1] : 1.0));
  for (std::size_t a = 0; a + 1 < z.size(); ++a)
    out.push_back(Interval::open(z[a], z[a] + std::min(cap, z[a + 1] - z[a])));
  return out;
}

// ---------------------------------------------------------------------------
// Monotone.

Monotone::Monotone(Direction dir) : dir_(dir) {}

std::string Monotone::name() const {
  switch (dir_) {
    case Direction::Nondecreasing: return "monotone-nondecr";
    case Direction::Nonincreasing: return "monotone-nonincr";
    case Direction::Either: return "monotone";
  }
  return "monotone";
}

std::string Monotone::dim_note() const {
  return dir_ == Direction::Either ? "level sets are half-lines of either orientation"
                                   : "level sets are half-lines of one orientation";
}

std::vector<StepFunction> Monotone::probe_members(std::span<const double> x, Rng& rng) const {
  std::vector<StepFunction> out{StepFunction::constant(0.0), StepFunction::constant(1.0)};
  const auto v = distinct_sorted(x);
  const bool up = dir_ != Direction::Nonincreasing;
  const bool down = dir_ != Direction::Nondecreasing;
  for (double a : v)
    for (bool closed : {true, false}) {
      if (up) out.push_back(StepFunction::indicator(Interval::upper(a, closed)));
      if (down) out.push_back(StepFunction::indicator(Interval::lower(a, closed)));
    }
  const double lo = v.empty() ? 0.0 : v.front() - 0.05;
  const double hi = v.empty() ? 1.0 : v.back() + 0.05;
  for (int r = 0; r < 6; ++r) {
    const bool inc = dir_ == Direction::Either ? coin(rng) : up;
    out.push_back(random_monotone(rng, inc, lo, hi));
  }
  return out;
}

StepFunction Monotone::random_member(Rng& rng) const {
  const bool inc = dir_ == Direction::Either ? coin(rng) : dir_ == Direction::Nondecreasing;
  return random_monotone(rng, inc, -0.1, 1.1);
}

SetFamily Monotone::level_family(double u, bool strict) const {
  switch (dir_) {
    case Direction::Nondecreasing: return indicator_levels(u, strict, sets::upper_halflines());
    case Direction::Nonincreasing: return indicator_levels(u, strict, sets::lower_halflines());
    case Direction::Either: break;
  }
  return indicator_levels(u, strict, sets::halflines_both());
}

double Monotone::sigma_of(const Distribution&) const { return 1.0; }

Extremes Monotone::weighted_extremes(std::span<const double> x, std::span<const double> w) const {
  const auto g = group(x, w);
  switch (dir_) {
    case Direction::Nondecreasing: return suffix_extremes(g);
    case Direction::Nonincreasing: return prefix_extremes(g);
    case Direction::Either: break;
  }
  return merge(suffix_extremes(g), prefix_extremes(g));
}

double Monotone::sup_empirical(const Sample& s) const {
  // The centred measure has total mass 0, so lower half-lines give the same
  // absolute values as upper ones.
  return HalfLines().sup_empirical(s);
}

std::vector<Interval> Monotone::extreme_indicators(std::span<const double> x, const Distribution&) const {
  if (dir_ == Direction::Nondecreasing) return halfline_candidates(x, true);
  auto out = halfline_candidates(x, false);
  if (dir_ == Direction::Either) {
    auto more = halfline_candidates(x, true);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translated monotone.

std::vector<StepFunction> TranslatedMonotone::probe_members(std::span<const double> x, Rng& rng) const {
  std::vector<StepFunction> out{StepFunction::constant(0.0)};
  auto v = distinct_sorted(x);
  std::erase_if(v, [](double y) { return y < 0.0 || y > 1.0; });
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t k = j; k < v.size(); ++k) out.push_back(StepFunction::indicator(Interval::closed(v[j], v[k])));
  for (int r = 0; r < 6; ++r) out.push_back(random_member(rng));
  return out;
}

StepFunction TranslatedMonotone::random_member(Rng& rng) const {
  const double t = uniform(rng, -1.0, 1.0);
  const auto f = random_monotone(rng, true, 0.0, 1.0);
  // f(x - t) on the support of f(. - t) within [0,1].
  StepFunction g;
  const double right = std::min(1.0, 1.0 + t);
  for (const auto& [w, i] : f.terms) {
    const Interval piece{std::max(0.0, t + i.lo), right, t + i.lo >= 0.0 ? i.lo_closed : true, true};
    if (!piece.is_empty()) g.terms.push_back({w, piece});
  }
  return g;
}

SetFamily TranslatedMonotone::level_family(double u, bool strict) const {
  return indicator_levels(u, strict, sets::intervals_within(0.0, 1.0));
}

double TranslatedMonotone::sigma_of(const Distribution& dist) const {
  if (!dist.has_analytic_probabilities()) throw UnsupportedFamily("translated-monotone: sigma needs analytic probabilities");
  return std::sqrt(dist.prob(Interval::closed(0.0, 1.0)));
}

Extremes TranslatedMonotone::weighted_extremes(std::span<const double> x, std::span<const double> w) const {
  std::vector<double> xs, ws;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= 0.0 && x[i] <= 1.0) {
      xs.push_back(x[i]);
      ws.push_back(w[i]);
    }
  return window_extremes(group(xs, ws), kInf);
}

double TranslatedMonotone::sup_empirical(const Sample& s) const {
  if (!all_uniform(s)) throw UnsupportedFamily("translated-monotone: exact empirical sup needs the uniform law");
  return sup_empirical_intervals(s);
}

std::vector<Interval> TranslatedMonotone::extreme_indicators(std::span<const double> x, const Distribution& dist) const {
  if (!dist.is_uniform()) throw UnsupportedFamily("translated-monotone: extreme points need the uniform law");
  std::vector<double> inside;
  for (double y : x)
    if (y >= 0.0 && y <= 1.0) inside.push_back(y);
  auto out = Intervals().extreme_indicators(inside, dist);
  // Clip to [0,1]; points outside are never picked up.
  for (auto& i : out) i = i.intersect(Interval::closed(0.0, 1.0));
  return out;
}

// ---------------------------------------------------------------------------
// Constant.

std::vector<StepFunction> Constant::probe_members(std::span<const double>, Rng&) const {
  return {StepFunction::constant(c_)};
}

StepFunction Constant::random_member(Rng&) const { return StepFunction::constant(c_); }

SetFamily Constant::level_family(double u, bool strict) const {
  const bool all = strict ? c_ > u : c_ >= u;
  return all ? sets::single("everything", Interval::everything()) : sets::single("nothing", Interval::nothing());
}

double Constant::sigma_of(const Distribution&) const { return std::abs(c_); }

Extremes Constant::weighted_extremes(std::span<const double>, std::span<const double> w) const {
  double total = 0.0;
  for (double v : w) total += v;
  return {c_ * total, c_ * total};
}

double Constant::sup_empirical(const Sample&) const { return 0.0; }

std::vector<Interval> Constant::extreme_indicators(std::span<const double>, const Distribution&) const {
  if (c_ == 1.0) return {Interval::everything()};
  if (c_ == 0.0) return {Interval::nothing()};
  return FunctionFamily::extreme_indicators({}, Distribution::uniform());
}

// ---------------------------------------------------------------------------
// Centred and halved.

CenteredHalved::CenteredHalved(FamilyPtr base, Distribution dist) : base_(std::move(base)), dist_(std::move(dist)) {
  if (!base_) throw std::invalid_argument("centered-halved: null base family");
  if (!dist_.has_analytic_probabilities()) throw UnavailableMean("centered-halved: law has no analytic means");
}

Range CenteredHalved::range() const {
  const auto r = base_->range();
  const double half = 0.5 * (r.hi - r.lo);
  return {-half, half};
}

int CenteredHalved::declared_weak_dim() const {
  if (dynamic_cast<const Constant*>(base_.get())) return 0;
  return base_->declared_vc_major_dim().value_or(base_->declared_weak_dim());
}

StepFunction CenteredHalved::transform(const StepFunction& f) const { return f.affine(dist_.mean(f), 0.5); }

std::vector<StepFunction> CenteredHalved::probe_members(std::span<const double> x, Rng& rng) const {
  auto out = base_->probe_members(x, rng);
  for (auto& f : out) f = transform(f);
  return out;
}

StepFunction CenteredHalved::random_member(Rng& rng) const { return transform(base_->random_member(rng)); }

double CenteredHalved::sigma_of(const Distribution& dist) const {
  if (dynamic_cast<const Constant*>(base_.get())) return 0.0;
  // Variance is convex in f, so it peaks at an indicator extreme point.
  if (dist.kind() == Distribution::Kind::Discrete) {
    double best = 0.0;
    for (const auto& i : base_->extreme_indicators(dist.knots_q(), dist)) {
      const double p = dist.prob(i);
      best = std::max(best, p * (1.0 - p));
    }
    return 0.5 * std::sqrt(best);
  }
  // Nonatomic: indicator masses fill [0, pmax].
  const double pmax = std::pow(base_->sigma_of(dist), 2);
  const double q = std::min(pmax, 0.5);
  return 0.5 * std::sqrt(q * (1.0 - q));
}

Extremes CenteredHalved::weighted_extremes(std::span<const double> x, std::span<const double> w) const {
  if (dynamic_cast<const Constant*>(base_.get())) return {0.0, 0.0};
  const auto g = group(x, w);
  std::vector<double> prefix(g.v.size() + 1, 0.0);
  for (std::size_t k = 0; k < g.v.size(); ++k) prefix[k + 1] = prefix[k] + g.w[k];
  const double total = prefix.back();
  // sum of weights at points of I, via the contiguous run of sorted values it covers.
  auto picked = [&](const Interval& I) {
    if (I.is_empty()) return 0.0;
    const auto first = I.lo_closed ? std::lower_bound(g.v.begin(), g.v.end(), I.lo)
                                   : std::upper_bound(g.v.begin(), g.v.end(), I.lo);
    const auto last = I.hi_closed ? std::upper_bound(g.v.begin(), g.v.end(), I.hi)
                                  : std::lower_bound(g.v.begin(), g.v.end(), I.hi);
    if (last <= first) return 0.0;
    return prefix[static_cast<std::size_t>(last - g.v.begin())] - prefix[static_cast<std::size_t>(first - g.v.begin())];
  };
  Extremes e{kInf, -kInf};
  for (const auto& I : base_->extreme_indicators(g.v, dist_)) {
    const double val = 0.5 * (picked(I) - total * dist_.prob(I));
    e.min = std::min(e.min, val);
    e.max = std::max(e.max, val);
  }
  return e;
}

double CenteredHalved::sup_empirical(const Sample& s) const {
  // The mean shift cancels in f(X_i) - E f(X_i).
  return 0.5 * base_->sup_empirical(s);
}

// ---------------------------------------------------------------------------
// Free functions.

double sup_rademacher_halflines(std::span<const double> x, std::span<const int> eps) {
  return HalfLines().sup_rademacher(x, eps);
}

double sup_rademacher_intervals(std::span<const double> x, std::span<const int> eps, std::optional<double> max_length) {
  return Intervals(max_length.value_or(kInf)).sup_rademacher(x, eps);
}

double sup_rademacher_monotone(std::span<const double> x, std::span<const int> eps, Monotone::Direction dir) {
  return Monotone(dir).sup_rademacher(x, eps);
}

double sup_empirical_intervals(const Sample& s, std::optional<double> max_length) {
  if (!all_uniform(s)) throw UnsupportedFamily("intervals: exact empirical sup needs the uniform law on [0,1]");
  const double cap = max_length.value_or(kInf);
  if (!(cap >= 0.0)) throw std::invalid_argument("sup_empirical_intervals: cap must be >= 0");
  const double n = static_cast<double>(s.size());
  const auto g = group_counts(s.values);
  const std::size_t m = g.v.size();

  // Positive part: closed data windows, count - n * length.
  std::vector<double> c(m + 1, 0.0);  // c[k] = points strictly below v[k]
  for (std::size_t k = 0; k < m; ++k) c[k + 1] = c[k] + g.w[k];
  std::vector<double> left_key(m);  // n v[j] - c[j]
  for (std::size_t j = 0; j < m; ++j) left_key[j] = n * g.v[j] - c[j];
  double best = 0.0;
  {
    MonoQueue q(left_key, true);
    std::size_t lo = 0;
    for (std::size_t k = 0; k < m; ++k) {
      q.push(k);
      while (g.v[k] - g.v[lo] > cap) ++lo;
      q.drop_before(lo);
      best = std::max(best, c[k + 1] - n * g.v[k] + q.best());
    }
  }

  // Negative part: open gaps between boundary points z = {0, data, 1}.
  std::vector<double> z{0.0};
  std::vector<double> below{0.0};     // points < z_t
  std::vector<double> at_most{0.0};   // points <= z_t
  std::size_t k0 = 0;
  if (m > 0 && g.v[0] <= 0.0) {
    at_most[0] = g.w[0];
    k0 = 1;
  }
  for (std::size_t k = k0; k < m && g.v[k] < 1.0; ++k) {
    z.push_back(g.v[k]);
    below.push_back(c[k]);
    at_most.push_back(c[k + 1]);
  }
  z.push_back(1.0);
  {
    double lt = 0.0;
    for (std::size_t k = 0; k < m && g.v[k] < 1.0; ++k) lt += g.w[k];
    below.push_back(lt);
    at_most.push_back(n);
  }
  const std::size_t t_count = z.size();
  std::vector<double> key(t_count);  // at_most[a] - n z[a]
  for (std::size_t a = 0; a < t_count; ++a) key[a] = at_most[a] - n * z[a];
  {
    MonoQueue q(key, true);
    std::size_t lo = 0;
    for (std::size_t b = 1; b < t_count; ++b) {
      q.push(b - 1);
      while (lo < b - 1 && z[b] - z[lo] > cap) ++lo;
      q.drop_before(lo);
      if (z[b] - z[lo] <= cap) best = std::max(best, n * z[b] - below[b] + q.best());
    }
  }
  if (!std::isinf(cap)) {
    std::size_t b = 0;
    for (std::size_t a = 0; a < t_count; ++a) {
      if (b <= a) b = a + 1;
      while (b < t_count && z[b] - z[a] <= cap) ++b;
      if (b == t_count) break;
      best = std::max(best, n * cap - (below[b] - at_most[a]));
    }
  }
  return best;
}

FamilyPtr center_halve(FamilyPtr base, const Distribution& dist) {
  if (!dist.has_analytic_probabilities()) throw UnavailableMean("center_halve: law has no analytic means");
  return std::make_shared<CenteredHalved>(std::move(base), dist);
}

FamilyPtr make_family(const std::string& name, const FamilyOptions& opt) {
  constexpr std::string_view kCentered = "centered-halved:";
  if (name.starts_with(kCentered)) return center_halve(make_family(name.substr(kCentered.size()), opt), opt.dist);
  if (name == "halflines") return std::make_shared<HalfLines>();
  if (name == "intervals") return std::make_shared<Intervals>();
  if (name == "intervals-capped") {
    if (!(opt.cap > 0.0 && opt.cap <= 1.0)) throw std::invalid_argument("intervals-capped: cap must lie in (0,1]");
    return std::make_shared<Intervals>(opt.cap);
  }
  if (name == "monotone") return std::make_shared<Monotone>(Monotone::Direction::Either);
  if (name == "monotone-nondecr") return std::make_shared<Monotone>(Monotone::Direction::Nondecreasing);
  if (name == "monotone-nonincr") return std::make_shared<Monotone>(Monotone::Direction::Nonincreasing);
  if (name == "translated-monotone") return std::make_shared<TranslatedMonotone>();
  if (name == "constant") return std::make_shared<Constant>(opt.constant);
  throw std::invalid_argument("unknown family: " + name);
}

std::vector<std::string> family_names() {
  return {"halflines",        "intervals",           "intervals-capped", "monotone",
          "monotone-nondecr", "monotone-nonincr",    "translated-monotone", "constant",
          "centered-halved:<base>"};
}

}  // namespace vcmajor

#include "vcmajor/shatter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "vcmajor/families.hpp"

namespace vcmajor {

TraceSet::TraceSet(int n) : n_(n), words_(static_cast<std::size_t>(std::max(1, (n + 63) / 64))) {
  if (n < 0) throw std::invalid_argument("TraceSet: negative n");
}

TraceSet TraceSet::from_indices(int n, const std::vector<std::vector<int>>& sets) {
  TraceSet t(n);
  for (const auto& s : sets) t.add_indices(s);
  t.canonicalize();
  return t;
}

int TraceSet::cardinality(std::size_t k) const {
  int c = 0;
  for (auto w : mask(k)) c += std::popcount(w);
  return c;
}

std::vector<int> TraceSet::indices(std::size_t k) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (contains(k, i)) out.push_back(i);
  return out;
}

void TraceSet::add(std::span<const std::uint64_t> m) {
  if (m.size() != words_) throw std::invalid_argument("TraceSet::add: mask width mismatch");
  bits_.insert(bits_.end(), m.begin(), m.end());
}

void TraceSet::add_indices(std::span<const int> idx) {
  std::vector<std::uint64_t> m(words_, 0);
  for (int i : idx) {
    if (i < 0 || i >= n_) throw std::out_of_range("TraceSet::add_indices: index out of range");
    m[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  }
  add(m);
}

void TraceSet::canonicalize() {
  const std::size_t m = size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return mask_less(mask(a), mask(b)); });
  std::vector<std::uint64_t> out;
  out.reserve(bits_.size());
  for (std::size_t k = 0; k < m; ++k) {
    const auto cur = mask(order[k]);
    if (k > 0 && std::equal(cur.begin(), cur.end(), mask(order[k - 1]).begin())) continue;
    out.insert(out.end(), cur.begin(), cur.end());
  }
  bits_ = std::move(out);
}

int hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  int d = 0;
  for (std::size_t w = 0; w < a.size(); ++w) d += std::popcount(a[w] ^ b[w]);
  return d;
}

bool mask_less(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  for (std::size_t w = a.size(); w-- > 0;)
    if (a[w] != b[w]) return a[w] < b[w];
  return false;
}

// ---------------------------------------------------------------------------
// Set families.

namespace {

std::vector<double> distinct_sorted(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

SetMember member_of(Interval i) {
  return [i](double y) { return i.contains(y); };
}

// A random endpoint: usually continuous over a padded data range, sometimes
// exactly a data point.
double random_point(Rng& rng, std::span<const double> x) {
  if (x.empty()) return uniform(rng, -0.5, 1.5);
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  if (uniform01(rng) < 0.3) return x[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(x.size()) - 1))];
  const double pad = 0.1 * (*hi_it - *lo_it) + 0.05;
  return uniform(rng, *lo_it - pad, *hi_it + pad);
}

bool coin(Rng& rng) { return rademacher(rng) > 0; }

}  // namespace

namespace sets {

SetFamily upper_halflines() {
  SetFamily f;
  f.name = "upper-halflines";
  f.enumerate = [](std::span<const double> x) {
    std::vector<SetMember> out{member_of(Interval::nothing())};
    for (double v : distinct_sorted(x)) out.push_back(member_of(Interval::upper(v, true)));
    return out;
  };
  f.random_member = [](Rng& rng, std::span<const double> x) {
    const double a = random_point(rng, x);
    return member_of(Interval::upper(a, coin(rng)));
  };
  return f;
}

SetFamily lower_halflines() {
  SetFamily f;
  f.name = "lower-halflines";
  f.enumerate = [](std::span<const double> x) {
    std::vector<SetMember> out{member_of(Interval::nothing())};
    for (double v : distinct_sorted(x)) out.push_back(member_of(Interval::lower(v, true)));
    return out;
  };
  f.random_member = [](Rng& rng, std::span<const double> x) {
    const double b = random_point(rng, x);
    return member_of(Interval::lower(b, coin(rng)));
  };
  return f;
}

SetFamily halflines_both() {
  SetFamily f;
  f.name = "halflines";
  const auto up = upper_halflines();
  const auto down = lower_halflines();
  f.enumerate = [up, down](std::span<const double> x) {
    auto out = up.enumerate(x);
    auto more = down.enumerate(x);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  };
  f.random_member = [up, down](Rng& rng, std::span<const double> x) {
    return coin(rng) ? up.random_member(rng, x) : down.random_member(rng, x);
  };
  return f;
}

SetFamily intervals(double cap) {
  if (!(cap >= 0.0)) throw std::invalid_argument("sets::intervals: cap must be >= 0");
  SetFamily f;
  f.name = std::isinf(cap) ? "intervals" : "intervals-capped";
  f.enumerate = [cap](std::span<const double> x) {
    std::vector<SetMember> out{member_of(Interval::nothing())};
    const auto v = distinct_sorted(x);
    for (std::size_t j = 0; j < v.size(); ++j)
      for (std::size_t k = j; k < v.size() && v[k] - v[j] <= cap; ++k)
        out.push_back(member_of(Interval::closed(v[j], v[k])));
    return out;
  };
  f.random_member = [cap](Rng& rng, std::span<const double> x) {
    const double a = random_point(rng, x);
    double b = random_point(rng, x);
    double lo = std::min(a, b), hi = std::max(a, b);
    if (hi - lo > cap) hi = lo + cap * uniform01(rng);
    return member_of(Interval{lo, hi, coin(rng), coin(rng)});
  };
  return f;
}

SetFamily intervals_within(double lo, double hi) {
  SetFamily f;
  f.name = "intervals-within";
  f.enumerate = [lo, hi](std::span<const double> x) {
    std::vector<SetMember> out{member_of(Interval::nothing())};
    auto v = distinct_sorted(x);
    std::erase_if(v, [&](double y) { return y < lo || y > hi; });
    for (std::size_t j = 0; j < v.size(); ++j)
      for (std::size_t k = j; k < v.size(); ++k) out.push_back(member_of(Interval::closed(v[j], v[k])));
    return out;
  };
  f.random_member = [lo, hi](Rng& rng, std::span<const double> x) {
    const double a = std::clamp(random_point(rng, x), lo, hi);
    const double b = std::clamp(random_point(rng, x), lo, hi);
    return member_of(Interval{std::min(a, b), std::max(a, b), coin(rng), coin(rng)});
  };
  return f;
}

SetFamily single(std::string name, Interval member) {
  SetFamily f;
  f.name = std::move(name);
  f.enumerate = [member](std::span<const double>) { return std::vector<SetMember>{member_of(member)}; };
  f.random_member = [member](Rng&, std::span<const double>) { return member_of(member); };
  return f;
}

}  // namespace sets

TraceSet trace_members(std::span<const SetMember> members, std::span<const double> x, int cap) {
  if (x.empty()) throw std::invalid_argument("trace: empty sample");
  if (static_cast<int>(x.size()) > cap)
    throw CapExceeded("trace: n = " + std::to_string(x.size()) + " exceeds the trace cap " + std::to_string(cap));
  const int n = static_cast<int>(x.size());
  TraceSet t(n);
  std::vector<std::uint64_t> m(t.words());
  for (const auto& member : members) {
    std::fill(m.begin(), m.end(), 0);
    for (int i = 0; i < n; ++i)
      if (member(x[static_cast<std::size_t>(i)])) m[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
    t.add(m);
  }
  t.canonicalize();
  return t;
}

TraceSet trace(const SetFamily& family, std::span<const double> x, int cap) {
  if (x.empty()) throw std::invalid_argument("trace: empty sample");
  if (static_cast<int>(x.size()) > cap)
    throw CapExceeded("trace: n = " + std::to_string(x.size()) + " exceeds the trace cap " + std::to_string(cap));
  const auto members = family.enumerate(x);
  return trace_members(members, x, cap);
}

// ---------------------------------------------------------------------------
// Shattering.

bool is_shattered(const TraceSet& t, std::span<const int> s) {
  const std::size_t k = s.size();
  if (k == 0) return t.size() >= 1;
  if (k > 24) throw std::invalid_argument("is_shattered: subset too large");
  const std::size_t need = std::size_t{1} << k;
  if (t.size() < need) return false;
  std::vector<char> seen(need, 0);
  std::size_t count = 0;
  for (std::size_t m = 0; m < t.size(); ++m) {
    std::size_t pattern = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (t.contains(m, s[j])) pattern |= std::size_t{1} << j;
    if (!seen[pattern]) {
      seen[pattern] = 1;
      if (++count == need) return true;
    }
  }
  return false;
}

namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

VcDimResult vc_dim_on_sample(const TraceSet& t, std::int64_t budget, std::uint64_t seed) {
  VcDimResult r;
  const int n = t.n();
  if (t.size() == 0) return r;
  // A shattered k-set needs 2^k distinct traces.
  const int k_max = std::min(n, static_cast<int>(std::bit_width(t.size())) - 1);
  for (int k = 1; k <= k_max; ++k) {
    if (static_cast<double>(r.checks) + binomial(n, k) > static_cast<double>(budget)) {
      r.exhaustive = false;
      break;
    }
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    bool found = false;
    do {
      ++r.checks;
      if (is_shattered(t, c)) {
        found = true;
        break;
      }
    } while (next_combination(c, n));
    if (!found) return r;  // shattering is hereditary: nothing larger either
    r.dim = k;
    r.witness = c;
  }
  if (r.exhaustive || r.dim == k_max) {
    r.exhaustive = true;
    return r;
  }
  // Randomized greedy growth with restarts.
  Rng rng = make_rng(seed, stream::kSearch, static_cast<std::uint64_t>(n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  while (r.checks < budget && r.dim < k_max) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> s;
    for (int i : perm) {
      if (r.checks >= budget || static_cast<int>(s.size()) == k_max) break;
      s.push_back(i);
      ++r.checks;
      if (!is_shattered(t, s)) s.pop_back();
    }
    if (static_cast<int>(s.size()) > r.dim) {
      r.dim = static_cast<int>(s.size());
      std::sort(s.begin(), s.end());
      r.witness = s;
    }
  }
  return r;
}

std::uint64_t sauer_bound(int n, int d) {
  if (n < 0 || d < 0) throw std::invalid_argument("sauer_bound: negative argument");
  using u128 = unsigned __int128;
  const u128 limit = std::numeric_limits<std::uint64_t>::max();
  const int k = std::min(n, d);
  u128 term = 1, sum = 1;
  for (int j = 1; j <= k; ++j) {
    term = term * static_cast<u128>(n - j + 1) / static_cast<u128>(j);
    sum += term;
    if (sum >= limit || term >= limit) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(sum);
}

bool sauer_check(const TraceSet& t, int d) { return t.size() <= sauer_bound(t.n(), d); }

// ---------------------------------------------------------------------------
// Level sets of function families.

TraceSet level_trace(std::span<const std::vector<double>> values, double u, bool strict, int cap) {
  if (values.empty()) throw std::invalid_argument("level_trace: no members");
  const int n = static_cast<int>(values.front().size());
  if (n == 0) throw std::invalid_argument("level_trace: empty sample");
  if (n > cap) throw CapExceeded("level_trace: n exceeds the trace cap");
  TraceSet t(n);
  std::vector<std::uint64_t> m(t.words());
  for (const auto& row : values) {
    std::fill(m.begin(), m.end(), 0);
    for (int i = 0; i < n; ++i) {
      const double v = row[static_cast<std::size_t>(i)];
      if (strict ? v > u : v >= u) m[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
    }
    t.add(m);
  }
  t.canonicalize();
  return t;
}

std::vector<double> value_grid(std::span<const std::vector<double>> values) {
  std::vector<double> all;
  for (const auto& row : values) all.insert(all.end(), row.begin(), row.end());
  const auto v = distinct_sorted(all);
  std::vector<double> grid;
  if (v.empty()) return grid;
  grid.push_back(v.front() - 1.0);
  for (std::size_t k = 0; k + 1 < v.size(); ++k) grid.push_back(0.5 * (v[k] + v[k + 1]));
  grid.push_back(v.back() + 1.0);
  return grid;
}

int weak_vc_dim_from_values(std::span<const std::vector<double>> values, std::span<const double> u_grid,
                            bool strict) {
  int best = 0;
  const int cap = values.empty() ? kDefaultTraceCap : static_cast<int>(values.front().size());
  for (double u : u_grid) best = std::max(best, vc_dim_on_sample(level_trace(values, u, strict, cap)).dim);
  return best;
}

std::vector<double> auto_u_grid(const FunctionFamily& ff, std::span<const double> x) {
  Rng rng = make_rng(0, stream::kProbe, x.size());
  const auto probes = ff.probe_members(x, rng);
  const auto values = member_values(probes, x);
  return value_grid(values);
}

int weak_vc_dim_estimate(const FunctionFamily& ff, std::span<const double> x, std::span<const double> u_grid,
                         bool strict) {
  int best = 0;
  for (double u : u_grid) {
    const auto t = trace(ff.level_family(u, strict), x, static_cast<int>(x.size()));
    best = std::max(best, vc_dim_on_sample(t).dim);
  }
  return best;
}

int weak_vc_dim_estimate(const FunctionFamily& ff, std::span<const double> x) {
  const auto grid = auto_u_grid(ff, x);
  return weak_vc_dim_estimate(ff, x, grid);
}

Estimate gamma_u_estimate(const FunctionFamily& ff, double u, const Distribution& dist, int n, int reps,
                          std::uint64_t seed, int cap) {
  if (reps < 2) throw std::invalid_argument("gamma_u_estimate: reps must be >= 2");
  if (n < 1) throw std::invalid_argument("gamma_u_estimate: n must be >= 1");
  if (n > cap) throw CapExceeded("gamma_u_estimate: n exceeds the trace cap");
  const auto level = ff.level_family(u);
  std::vector<double> vals(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    Rng rng = make_rng(seed, stream::kSample, static_cast<std::uint64_t>(r));
    const Sample s = draw_sample(dist, static_cast<std::size_t>(n), rng);
    vals[static_cast<std::size_t>(r)] = std::log(2.0 * static_cast<double>(trace(level, s.values, cap).size()));
  }
  return summarize(vals);
}

GammaCurve gamma_curve(const FunctionFamily& ff, const Distribution& dist, int n, std::span<const double> u_grid,
                       int reps, std::uint64_t seed, int cap) {
  GammaCurve c;
  const double ceiling = gamma_bar(n, ff.declared_weak_dim());
  for (double u : u_grid) {
    const auto e = gamma_u_estimate(ff, u, dist, n, reps, seed, cap);
    if (e.mean > ceiling * (1.0 + 1e-12))
      throw std::logic_error("gamma_curve: estimate above gamma_bar(n, declared dimension) for " + ff.name());
    c.knots.push_back(u);
    c.values.push_back(e.mean);
    c.stderrs.push_back(e.std_error);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Rademacher suprema over finite trace sets.

double exact_conditional_rademacher(const TraceSet& t) {
  const int n = t.n();
  if (n > 24) throw CapExceeded("exact_conditional_rademacher: n must be <= 24");
  if (t.size() == 0) throw std::invalid_argument("exact_conditional_rademacher: empty trace set");
  std::vector<std::uint64_t> masks(t.size());
  std::vector<int> sizes(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    masks[k] = t.mask(k)[0];
    sizes[k] = std::popcount(masks[k]);
  }
  const std::uint64_t patterns = std::uint64_t{1} << n;
  std::uint64_t total = 0;  // exact integer accumulation
  for (std::uint64_t p = 0; p < patterns; ++p) {
    int best = 0;
    for (std::size_t k = 0; k < masks.size(); ++k) best = std::max(best, std::abs(2 * std::popcount(masks[k] & p) - sizes[k]));
    total += static_cast<std::uint64_t>(best);
  }
  return static_cast<double>(total) / static_cast<double>(patterns);
}

double trace_rademacher_sup(const TraceSet& t, std::span<const int> eps) {
  if (static_cast<int>(eps.size()) != t.n()) throw std::invalid_argument("trace_rademacher_sup: size mismatch");
  int best = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    int s = 0;
    for (int i = 0; i < t.n(); ++i)
      if (t.contains(k, i)) s += eps[static_cast<std::size_t>(i)];
    best = std::max(best, std::abs(s));
  }
  return best;
}

double massart_trace_bound(const TraceSet& t) {
  int v2 = 0;
  for (std::size_t k = 0; k < t.size(); ++k) v2 = std::max(v2, t.cardinality(k));
  return massart_finite_bound(t.size(), static_cast<double>(v2));
}

}  // namespace vcmajor

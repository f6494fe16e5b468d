#pragma once

// Slow reference computations used only by the tests. Each one enumerates
// candidates directly instead of sharing code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "vcmajor/rng.hpp"

namespace oracle {

inline std::vector<std::size_t> sort_order(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  return idx;
}

// Every subset of indices cut by a closed interval [x_a, x_b] of the data.
inline std::set<std::vector<int>> interval_traces(const std::vector<double>& x, double cap = INFINITY) {
  std::set<std::vector<int>> out{{}};
  for (double lo : x)
    for (double hi : x) {
      if (hi < lo || hi - lo > cap) continue;
      std::vector<int> s;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= lo && x[i] <= hi) s.push_back(static_cast<int>(i));
      out.insert(s);
    }
  return out;
}

// Subsets cut by {x > a} and {x >= a}.
inline std::set<std::vector<int>> upper_halfline_traces(const std::vector<double>& x) {
  std::set<std::vector<int>> out{{}};
  for (double a : x) {
    std::vector<int> s;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] >= a) s.push_back(static_cast<int>(i));
    out.insert(s);
  }
  return out;
}

inline double sup_over_sets(const std::set<std::vector<int>>& sets, const std::vector<int>& eps) {
  double best = 0.0;
  for (const auto& s : sets) {
    int sum = 0;
    for (int i : s) sum += eps[static_cast<std::size_t>(i)];
    best = std::max(best, static_cast<double>(std::abs(sum)));
  }
  return best;
}

inline std::vector<int> signs_from_bits(std::uint64_t bits, int n) {
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eps[static_cast<std::size_t>(i)] = (bits >> i) & 1u ? 1 : -1;
  return eps;
}

// E_eps sup_S |sum_{i in S} eps_i| over all 2^n sign vectors.
inline double exhaustive_rademacher(const std::set<std::vector<int>>& sets, int n) {
  double total = 0.0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) total += sup_over_sets(sets, signs_from_bits(b, n));
  return total / static_cast<double>(std::uint64_t{1} << n);
}

// max |sum eps_i v_i| over 0/1 vectors v that are nondecreasing along the
// sorted order of x (ties forced equal): the vertices of the monotone
// polytope.
inline double monotone_vertex_sup(const std::vector<double>& x, const std::vector<int>& eps, bool increasing) {
  const int n = static_cast<int>(x.size());
  const auto order = sort_order(x);
  double best = 0.0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    bool ok = true;
    for (int k = 0; k + 1 < n && ok; ++k) {
      const int a = (v >> order[static_cast<std::size_t>(k)]) & 1u;
      const int b = (v >> order[static_cast<std::size_t>(k + 1)]) & 1u;
      const bool tie = x[order[static_cast<std::size_t>(k)]] == x[order[static_cast<std::size_t>(k + 1)]];
      if (tie ? a != b : (increasing ? a > b : a < b)) ok = false;
    }
    if (!ok) continue;
    int s = 0;
    for (int i = 0; i < n; ++i)
      if ((v >> i) & 1u) s += eps[static_cast<std::size_t>(i)];
    best = std::max(best, static_cast<double>(std::abs(s)));
  }
  return best;
}

// sup over intervals I of [0,1] with |I| <= cap of |#{x_i in I} - n |I||
// for uniform data, by enumerating endpoints in {0, 1, x_i, x_i +- cap}
// with all four open/closed conventions.
inline double empirical_intervals_enum(const std::vector<double>& x, double cap = INFINITY) {
  const double n = static_cast<double>(x.size());
  std::vector<double> ends{0.0, 1.0};
  for (double v : x) {
    ends.push_back(v);
    if (std::isfinite(cap)) {
      ends.push_back(std::clamp(v - cap, 0.0, 1.0));
      ends.push_back(std::clamp(v + cap, 0.0, 1.0));
    }
  }
  if (std::isfinite(cap)) {
    ends.push_back(std::min(cap, 1.0));
    ends.push_back(std::max(1.0 - cap, 0.0));
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  double best = 0.0;
  for (double lo : ends)
    for (double hi : ends) {
      if (hi < lo) continue;
      const double len = hi - lo;
      if (len > cap * (1.0 + 1e-15) + 1e-15) continue;
      for (int lc = 0; lc < 2; ++lc)
        for (int hc = 0; hc < 2; ++hc) {
          if (lo == hi && !(lc && hc)) continue;
          double count = 0.0;
          for (double v : x)
            if ((lc ? v >= lo : v > lo) && (hc ? v <= hi : v < hi)) count += 1.0;
          best = std::max(best, std::abs(count - n * len));
        }
    }
  return best;
}

// The same supremum restricted to random endpoints (a lower bound).
inline double empirical_intervals_random(const std::vector<double>& x, double cap, int draws, vcmajor::Rng& rng) {
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  for (int k = 0; k < draws; ++k) {
    double a = vcmajor::uniform01(rng), b = vcmajor::uniform01(rng);
    if (a > b) std::swap(a, b);
    if (b - a > cap) b = a + cap;
    double count = 0.0;
    for (double v : x)
      if (v >= a && v <= b) count += 1.0;
    best = std::max(best, std::abs(count - n * (b - a)));
  }
  return best;
}

// Massart's bound evaluated literally on explicit vectors.
inline double massart_literal(const std::vector<std::vector<double>>& t) {
  double v2 = 0.0;
  for (const auto& row : t) {
    double s = 0.0;
    for (double e : row) s += e * e;
    v2 = std::max(v2, s);
  }
  return std::sqrt(2.0 * std::log(2.0 * static_cast<double>(t.size())) * v2);
}

inline double log_binomial_sum(int n, int d) {
  // exact integer sum for small n
  double s = 0.0, c = 1.0;
  for (int j = 0; j <= std::min(n, d); ++j) {
    s += c;
    c = c * (n - j) / (j + 1);
  }
  return std::log(2.0 * s);
}

}  // namespace oracle

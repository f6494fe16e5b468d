#include "vcmajor/chaining.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vcmajor/bounds.hpp"

namespace vcmajor {
namespace {

constexpr double kLog2 = std::numbers::ln2;

int effective_dim(std::int64_t n, int d) { return static_cast<int>(std::min<std::int64_t>(d, n)); }

// log(e(d+1)(2e)^d)
double haussler_constant(int d) { return 1.0 + std::log(d + 1.0) + d * (kLog2 + 1.0); }

// gamma_bar(n,d) - log 2, taken as the log of the integer Sauer count when it
// fits so that a packing of exactly that size compares equal.
double entropy_cap(std::int64_t n, int d) {
  if (n <= std::numeric_limits<int>::max()) {
    const auto s = sauer_bound(static_cast<int>(n), d);
    if (s < std::numeric_limits<std::uint64_t>::max()) return std::log(static_cast<double>(s));
  }
  return gamma_bar(n, d) - kLog2;
}

}  // namespace

double chaining_q() { return std::pow(2.0, 2.5) * std::exp(-6.0); }

double chaining_bq() {
  const double q = chaining_q();
  return std::sqrt(2.0) * (std::sqrt(1.0 + q * q) / (1.0 - q) + std::sqrt(1.0 / 3.0));
}

double chaining_cd(int d) {
  if (d < 1) throw std::domain_error("chaining_cd: d must be >= 1");
  return 2.0 + 14.0 * d + 2.0 * std::log(d + 1.0) - (3.0 * d - 1.0) * kLog2;
}

double chaining_cd_literal(int d) {
  if (d < 1) throw std::domain_error("chaining_cd_literal: d must be >= 1");
  const double e = std::numbers::e;
  return kLog2 + 2.0 * std::log(e * (d + 1.0) * std::pow(2.0 * e, d)) + 2.0 * d * std::log(1.0 / chaining_q());
}

double h_entropy(double eta, std::int64_t n, int d) {
  if (!(eta > 0.0)) throw std::domain_error("h_entropy: eta must be > 0");
  if (d < 1) throw std::domain_error("h_entropy: d must be >= 1");
  if (n < 1) throw std::domain_error("h_entropy: n must be >= 1");
  if (eta >= 1.0) return 0.0;
  const int k = effective_dim(n, d);
  const double haussler = haussler_constant(k) + k * std::log(1.0 / eta);
  return std::min(haussler, entropy_cap(n, d));
}

double H_integral(double x, std::int64_t n, int d, const QuadratureOptions& opt) {
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("H_integral: x must lie in (0,1]");
  const double q = chaining_q();
  // Left limit at u = 1, where h(u^2) drops to 0.
  const double below_one = std::nextafter(1.0, 0.0);
  const int k = effective_dim(n, d);
  const double cap = entropy_cap(n, d);
  // h(0+) is the cap.
  const auto h = [&](double eta) { return eta > 0.0 ? h_entropy(eta, n, d) : cap; };
  const auto integrand = [&](double u) {
    const double eta = std::min(u * u, below_one);
    return std::sqrt(kLog2 + h(eta) + h(q * q * eta));
  };
  // Kinks where the two branches of h meet.
  std::vector<double> cuts;
  const double eta_star = std::exp(-(cap - haussler_constant(k)) / k);
  if (eta_star > 0.0 && eta_star < 1.0) {
    cuts.push_back(std::sqrt(eta_star));
    cuts.push_back(std::sqrt(eta_star) / q);
  }
  try {
    return integrate_piecewise(integrand, 0.0, x, cuts, opt);
  } catch (const QuadratureError& e) {
    throw QuadratureError(std::string("H_integral: ") + e.what());
  }
}

Packing l1_packing(const TraceSet& t, double eta, bool with_projection) {
  if (!(eta > 0.0)) throw std::invalid_argument("l1_packing: eta must be > 0");
  if (t.size() == 0) throw std::invalid_argument("l1_packing: empty trace set");
  Packing p;
  p.eta = eta;
  const double radius = static_cast<double>(t.n()) * eta;
  if (eta >= 1.0) {
    p.centers = {0};
  } else if (radius < 1.0) {
    // Distinct traces are at distance >= 1 > n*eta: every trace is a centre.
    p.centers.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) p.centers[k] = k;
  } else {
    for (std::size_t k = 0; k < t.size(); ++k) {
      bool separated = true;
      for (std::size_t c : p.centers)
        if (hamming(t.mask(k), t.mask(c)) <= radius) {
          separated = false;
          break;
        }
      if (separated) p.centers.push_back(k);
    }
  }
  if (!with_projection) return p;
  p.projection.resize(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    int best = std::numeric_limits<int>::max();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < p.centers.size(); ++c) {
      const int dist = hamming(t.mask(k), t.mask(p.centers[c]));
      if (dist < best) {
        best = dist;
        arg = c;
      }
    }
    p.projection[k] = arg;
  }
  return p;
}

double realized_eta0(const TraceSet& t) {
  int best = 0;
  for (std::size_t k = 0; k < t.size(); ++k) best = std::max(best, t.cardinality(k));
  return t.n() > 0 ? static_cast<double>(best) / t.n() : 0.0;
}

ChainReport chaining_decomposition(const TraceSet& t, std::span<const int> eps, double eta0, int d) {
  const int n = t.n();
  if (!(eta0 > 0.0 && eta0 <= 1.0)) throw std::invalid_argument("chaining_decomposition: eta0 must lie in (0,1]");
  if (static_cast<int>(eps.size()) != n) throw std::invalid_argument("chaining_decomposition: one sign per index");
  if (t.size() == 0) throw std::invalid_argument("chaining_decomposition: empty trace set");
  const double q2 = chaining_q() * chaining_q();
  const std::size_t m = t.size();

  // sum eps_i over a mask
  auto signed_sum = [&](std::size_t k) {
    int s = 0;
    for (int i = 0; i < n; ++i)
      if (t.contains(k, i)) s += eps[static_cast<std::size_t>(i)];
    return s;
  };
  std::vector<int> sums(m);
  for (std::size_t k = 0; k < m; ++k) sums[k] = signed_sum(k);

  ChainReport rep;
  for (int s : sums) rep.zbar = std::max(rep.zbar, static_cast<double>(std::abs(s)));

  // chain[k][c] = trace index of C_k for trace c
  std::vector<std::vector<std::size_t>> chain;
  double eta = eta0;
  for (int k = 0;; ++k) {
    const auto p = l1_packing(t, eta);
    std::vector<std::size_t> level(m);
    for (std::size_t c = 0; c < m; ++c) level[c] = p.centers[p.projection[c]];
    ChainLevel row;
    row.k = k;
    row.eta = eta;
    row.packing_size = p.size();
    row.h = h_entropy(eta, n, std::max(d, 1));
    if (k == 0) {
      for (std::size_t c : p.centers) row.level_sup = std::max(row.level_sup, static_cast<double>(std::abs(sums[c])));
    } else {
      const auto& prev = chain.back();
      const double prev_eta = rep.levels.back().eta;
      for (std::size_t c = 0; c < m; ++c) {
        // Increments are differences of indicator sums, so sums subtract.
        row.level_sup = std::max(row.level_sup, static_cast<double>(std::abs(sums[level[c]] - sums[prev[c]])));
        if (hamming(t.mask(level[c]), t.mask(prev[c])) > n * (1.0 + q2) * prev_eta * (1.0 + 1e-12))
          rep.increments_ok = false;
      }
    }
    row.cumulative = (rep.levels.empty() ? 0.0 : rep.levels.back().cumulative) + row.level_sup;
    rep.levels.push_back(row);
    chain.push_back(std::move(level));
    if (eta < 1.0 / n) break;
    eta *= q2;
  }

  // Telescoping: C_0 + sum_k (C_{k+1} - C_k) = C_K, which must equal C.
  const auto& last = chain.back();
  for (std::size_t c = 0; c < m; ++c) {
    if (last[c] != c) rep.final_exact = false;
    for (int i = 0; i < n; ++i) {
      int v = t.contains(chain[0][c], i) ? 1 : 0;
      for (std::size_t k = 1; k < chain.size(); ++k)
        v += (t.contains(chain[k][c], i) ? 1 : 0) - (t.contains(chain[k - 1][c], i) ? 1 : 0);
      if (v != (t.contains(c, i) ? 1 : 0)) rep.telescoping_ok = false;
    }
  }
  rep.total = rep.levels.back().cumulative;
  rep.master_ok = rep.zbar <= rep.total;
  return rep;
}

double conditional_chaining_bound(const TraceSet& t, int d) {
  const double eta0 = realized_eta0(t);
  if (eta0 == 0.0) return 0.0;
  return 2.5 * std::sqrt(static_cast<double>(t.n())) * H_integral(std::sqrt(eta0), t.n(), d);
}

}  // namespace vcmajor

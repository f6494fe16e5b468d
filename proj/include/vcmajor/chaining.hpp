#pragma once

// Chaining machinery for indicator families: empirical L1 packings of trace
// sets, the entropy function h, the integral H and the level-by-level
// decomposition of the Rademacher supremum.

#include <cstdint>
#include <span>
#include <vector>

#include "vcmajor/quadrature.hpp"
#include "vcmajor/shatter.hpp"

namespace vcmajor {

// 2^{5/2} e^{-6}
double chaining_q();
// sqrt(2) (sqrt(1+q^2)/(1-q) + sqrt(1/3))
double chaining_bq();
// log 2 + 2 log(e(d+1)(2e)^d) + 2d log(1/q), in a rounding-free form.
double chaining_cd(int d);
// The same constant evaluated term by term.
double chaining_cd_literal(int d);

// min{log(e(d+1)(2e)^d) + d log(1/eta), gamma_bar(n,d) - log 2} on (0,1),
// 0 for eta >= 1; d stands for d∧n.
double h_entropy(double eta, std::int64_t n, int d);

// int_0^x sqrt(log 2 + h(u^2) + h(q^2 u^2)) du for 0 < x <= 1.
double H_integral(double x, std::int64_t n, int d, const QuadratureOptions& opt = {});

struct Packing {
  double eta = 0.0;
  std::vector<std::size_t> centers;     // indices into the trace set
  std::vector<std::size_t> projection;  // trace index -> index into centers
  std::size_t size() const { return centers.size(); }
};

// Greedy maximal packing in trace order: a trace becomes a centre when its
// Hamming distance to every existing centre exceeds n*eta. The projection
// maps each trace to its nearest centre (first in order on ties) and is
// skipped when with_projection is false.
Packing l1_packing(const TraceSet& t, double eta, bool with_projection = true);

// max_C |C|/n over the traces.
double realized_eta0(const TraceSet& t);

struct ChainLevel {
  int k = 0;
  double eta = 0.0;
  std::size_t packing_size = 0;
  double h = 0.0;
  // k = 0: max over level-0 centres of |sum eps_i 1_{C_0}(X_i)|;
  // k > 0: sup over traces of |sum eps_i (1_{C_k} - 1_{C_{k-1}})(X_i)|.
  double level_sup = 0.0;
  double cumulative = 0.0;
};

struct ChainReport {
  std::vector<ChainLevel> levels;
  double zbar = 0.0;   // realized sup over traces
  double total = 0.0;  // last cumulative value
  bool telescoping_ok = true;  // C_0 + sum of increments rebuilds every trace
  bool increments_ok = true;   // |C_{k+1} Δ C_k| <= n (1+q^2) eta_k
  bool final_exact = true;     // the last level projects every trace to itself
  bool master_ok = true;       // zbar <= total
};

// Levels eta_k = q^{2k} eta0 for k = 0..K, K the first index with
// eta_K < 1/n. Requires 0 < eta0 <= 1 and one sign per sample index.
ChainReport chaining_decomposition(const TraceSet& t, std::span<const int> eps, double eta0, int d);

// 2.5 sqrt(n) H(sqrt(eta0)) with eta0 = realized_eta0(t); 0 when eta0 = 0.
double conditional_chaining_bound(const TraceSet& t, int d);

}  // namespace vcmajor

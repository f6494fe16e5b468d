#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "vcmajor/bounds.hpp"
#include "vcmajor/chaining.hpp"

using namespace vcmajor;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> uniform_points(int n, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = uniform01(rng);
  return x;
}

}  // namespace

TEST_CASE("chaining constants", "[chaining]") {
  CHECK_THAT(chaining_q(), WithinAbs(0.0140219397, 1e-10));
  CHECK_THAT(chaining_bq(), WithinAbs(2.2509631, 1e-6));
  CHECK(chaining_bq() < 2.5);
  CHECK_THAT(chaining_cd(1), WithinRel(16.0, 1e-12));
  CHECK_THAT(chaining_cd(2), WithinAbs(28.731489, 1e-6));
  for (int d = 1; d <= 100; ++d) {
    CHECK_THAT(chaining_cd(d), WithinRel(chaining_cd_literal(d), 1e-12));
    CHECK(chaining_cd(d) <= 16.0 * d + 1e-9);
  }
}

TEST_CASE("entropy function h", "[chaining]") {
  CHECK(h_entropy(1.0, 3, 1) == 0.0);
  CHECK(h_entropy(2.0, 3, 1) == 0.0);
  CHECK_THAT(h_entropy(std::nextafter(1.0, 0.0), 3, 1), WithinAbs(std::log(4.0), 1e-12));
  CHECK_THAT(h_entropy(0.5, 100, 2), WithinAbs(6.871201, 1e-6));
  CHECK_THAT(h_entropy(0.001, 100, 2), WithinAbs(8.527342, 1e-6));
  CHECK_THROWS_AS(h_entropy(0.0, 10, 1), std::domain_error);
  // the cap: log of the Sauer count
  for (int n : {1, 2, 5, 50})
    for (int d : {1, 2, 3}) {
      CHECK(h_entropy(1e-12, n, d) == std::log(static_cast<double>(sauer_bound(n, d))));
      CHECK_THAT(h_entropy(1e-12, n, d), WithinAbs(gamma_bar(n, d) - std::log(2.0), 1e-13));
    }
  // floor on (0,1)
  for (int n : {1, 3, 10, 1000})
    for (double eta : {0.9, 0.5, 0.01})
      CHECK(h_entropy(eta, n, 1) >= std::min(2.0 * std::log(2.0 * std::exp(1.0)), std::log(n + 1.0)) - 1e-12);
  // nonincreasing in eta
  double prev = INFINITY;
  for (double eta = 0.001; eta < 1.0; eta += 0.001) {
    const double h = h_entropy(eta, 100, 2);
    CHECK(h <= prev);
    prev = h;
  }
}

TEST_CASE("entropy integral H", "[chaining]") {
  CHECK_THAT(H_integral(1.0, 10, 1), WithinAbs(2.342848, 1e-5));
  CHECK_THAT(H_integral(0.5, 100, 2), WithinAbs(2.105879, 1e-5));
  CHECK_THAT(H_integral(1.0, 100, 2), WithinAbs(4.101063, 1e-5));
  CHECK_THAT(H_integral(0.3, 1000, 3), WithinAbs(1.833216, 1e-5));
  CHECK_THROWS(H_integral(0.0, 10, 1));
  CHECK_THROWS(H_integral(1.5, 10, 1));
  for (int n : {5, 100, 10000})
    for (int d : {1, 2, 4}) {
      double prev = 0.0, prev_slope = INFINITY;
      const double step = 0.02;
      for (int k = 1; k <= 50; ++k) {
        const double x = k * step;
        const double v = H_integral(x, n, d);
        CHECK(v >= prev);
        CHECK(v <= std::sqrt(2.0 * gamma_bar(n, d)) * x + 1e-9);
        CHECK(v <= 2.0 * h_bar(x, d) + 1e-9);
        const double slope = (v - prev) / step;
        CHECK(slope <= prev_slope + 1e-6);
        prev_slope = slope;
        prev = v;
      }
    }
}

TEST_CASE("packings", "[chaining]") {
  const std::vector<double> x{0.2, 0.5, 0.9};
  const auto t = trace(sets::upper_halflines(), x);
  SECTION("eta >= 1 keeps one centre") {
    const auto p = l1_packing(t, 1.0);
    CHECK(p.size() == 1);
    for (auto c : p.projection) CHECK(c == 0);
  }
  SECTION("eta below 1/n keeps every trace") {
    const auto p = l1_packing(t, 0.3);
    CHECK(p.size() == 4);
    for (std::size_t k = 0; k < t.size(); ++k) CHECK(p.centers[p.projection[k]] == k);
  }
  SECTION("separation, covering, size") {
    Rng rng = make_rng(21, stream::kSample, 0);
    for (int rep = 0; rep < 100; ++rep) {
      const int n = 2 + static_cast<int>(uniform_int(rng, 0, 20));
      const auto ti = trace(sets::intervals(), uniform_points(n, rng));
      const double eta = 0.02 + 0.5 * uniform01(rng);
      const auto p = l1_packing(ti, eta);
      CHECK(p.size() <= ti.size());
      for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
          CHECK(hamming(ti.mask(p.centers[a]), ti.mask(p.centers[b])) > n * eta);
      for (std::size_t k = 0; k < ti.size(); ++k)
        CHECK(hamming(ti.mask(k), ti.mask(p.centers[p.projection[k]])) <= n * eta);
      CHECK(std::log(static_cast<double>(p.size())) <= h_entropy(eta, n, 2) + 1e-12);
      CHECK(l1_packing(ti, eta, false).centers == p.centers);
    }
  }
}

TEST_CASE("realized eta0", "[chaining]") {
  const auto t = trace(sets::upper_halflines(), std::vector<double>{0.2, 0.5, 0.9, 0.95});
  CHECK(realized_eta0(t) == 1.0);
  const auto c = trace(sets::intervals(0.1), std::vector<double>{0.1, 0.5, 0.9});
  CHECK_THAT(realized_eta0(c), WithinAbs(1.0 / 3.0, 1e-15));
}

TEST_CASE("chaining decomposition", "[chaining]") {
  SECTION("a single trace") {
    const auto t = TraceSet::from_indices(3, {{}});
    const std::vector<int> eps{1, -1, 1};
    const auto r = chaining_decomposition(t, eps, 1.0, 1);
    CHECK(r.zbar == 0.0);
    CHECK(r.total == 0.0);
    for (const auto& l : r.levels) CHECK(l.level_sup == 0.0);
  }
  SECTION("levels on half-lines with three points") {
    const auto t = trace(sets::upper_halflines(), std::vector<double>{0.2, 0.5, 0.9});
    const std::vector<int> eps{1, 1, 1};
    const auto r = chaining_decomposition(t, eps, 1.0, 1);
    REQUIRE(r.levels.size() == 2);  // eta_1 = q^2 < 1/3
    CHECK(r.levels[0].packing_size == 1);
    CHECK(r.levels[1].packing_size == 4);
    CHECK(r.zbar == 3.0);
    CHECK(r.telescoping_ok);
    CHECK(r.final_exact);
    CHECK(r.master_ok);
    CHECK(r.levels.back().cumulative == r.total);
  }
  SECTION("every sign vector for small samples") {
    Rng rng = make_rng(22, stream::kSample, 0);
    for (int rep = 0; rep < 40; ++rep) {
      const int n = 2 + rep % 9;
      const auto x = uniform_points(n, rng);
      const auto t = trace(rep % 2 ? sets::intervals() : sets::intervals(0.3), x);
      const double eta0 = realized_eta0(t);
      if (eta0 == 0.0) continue;
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        const auto eps = oracle::signs_from_bits(b, n);
        const auto r = chaining_decomposition(t, eps, eta0, 2);
        CHECK(r.telescoping_ok);
        CHECK(r.increments_ok);
        CHECK(r.final_exact);
        CHECK(r.master_ok);
        CHECK(r.zbar == trace_rademacher_sup(t, eps));
      }
    }
  }
  SECTION("preconditions") {
    const auto t = trace(sets::upper_halflines(), std::vector<double>{0.2, 0.5});
    const std::vector<int> eps{1, -1};
    CHECK_THROWS(chaining_decomposition(t, eps, 0.0, 1));
    CHECK_THROWS(chaining_decomposition(t, eps, 1.5, 1));
    CHECK_THROWS(chaining_decomposition(t, std::vector<int>{1}, 1.0, 1));
  }
}

TEST_CASE("conditional chaining bound", "[chaining]") {
  const auto t = trace(sets::upper_halflines(), std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8});
  CHECK_THAT(conditional_chaining_bound(t, 2), WithinAbs(19.8934449076, 1e-8));
  CHECK(conditional_chaining_bound(TraceSet::from_indices(4, {{}}), 1) == 0.0);
  Rng rng = make_rng(23, stream::kSample, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(uniform_int(rng, 0, 9));
    const auto t2 = trace(sets::intervals(), uniform_points(n, rng));
    CHECK(exact_conditional_rademacher(t2) <= conditional_chaining_bound(t2, 2));
  }
}

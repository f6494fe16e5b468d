#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "vcmajor/bounds.hpp"
#include "vcmajor/montecarlo.hpp"
#include "vcmajor/shatter.hpp"

using namespace vcmajor;
using Catch::Matchers::WithinAbs;

namespace {

McConfig config(const std::string& family, int n, int reps, std::uint64_t seed, double cap = 0.25) {
  McConfig c;
  FamilyOptions opt;
  opt.cap = cap;
  c.family = make_family(family, opt);
  c.n = n;
  c.reps = reps;
  c.seed = seed;
  return c;
}

// E|eps_1 + ... + eps_n| by enumeration
double mean_abs_walk(int n) {
  double total = 0.0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) total += std::abs(2 * std::popcount(b) - n);
  return total / static_cast<double>(std::uint64_t{1} << n);
}

}  // namespace

TEST_CASE("stats helpers", "[montecarlo]") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(pairwise_sum(v) == 10.0);
  const auto e = summarize(v);
  CHECK(e.mean == 2.5);
  CHECK_THAT(e.std_error, WithinAbs(std::sqrt(5.0 / 3.0) / 2.0, 1e-15));
  CHECK(e.reps == 4);
}

TEST_CASE("constant family", "[montecarlo]") {
  auto c = config("constant", 7, 200, 1);
  const auto z = estimate_Z(c);
  CHECK(z.mean == 0.0);
  CHECK(z.std_error == 0.0);
  const auto zb = estimate_Zbar_exhaustive(config("constant", 2, 10, 1));
  CHECK(zb.mean == 1.0);
  for (int n = 1; n <= 12; ++n) CHECK_THAT(estimate_Zbar_exhaustive(config("constant", n, 2, 1)).mean, WithinAbs(mean_abs_walk(n), 1e-12));
  const auto sym = symmetrization_check(c);
  CHECK(sym.pass);
  CHECK(sym.lhs.mean == 0.0);
}

TEST_CASE("intervals with one point", "[montecarlo]") {
  const auto z = estimate_Z(config("intervals", 1, 100, 3));
  CHECK(z.mean == 1.0);
  CHECK(z.std_error == 0.0);
}

TEST_CASE("half-lines with two points", "[montecarlo]") {
  const auto zb = estimate_Zbar_exhaustive(config("halflines", 2, 20, 4));
  CHECK(zb.mean == 1.5);
  CHECK(zb.std_error == 0.0);
}

TEST_CASE("simulated Zbar matches the exhaustive value", "[montecarlo]") {
  for (const char* fam : {"halflines", "intervals"})
    for (int n : {3, 7, 11}) {
      const auto mc = estimate_Zbar(config(fam, n, 4000, 5));
      const auto ex = estimate_Zbar_exhaustive(config(fam, n, 4, 5));
      INFO(fam << " n=" << n);
      CHECK(ex.std_error == 0.0);  // distinct points: the trace set only depends on the order
      CHECK(std::abs(mc.mean - ex.mean) <= 3.0 * mc.std_error);
    }
}

TEST_CASE("Zbar stays under Massart per replicate", "[montecarlo]") {
  auto c = config("intervals", 9, 200, 6);
  c.keep_per_rep = true;
  const auto zb = estimate_Zbar(c);
  for (std::int64_t r = 0; r < c.reps; ++r) {
    const auto s = draw_replicate_sample(c, r);
    const auto t = trace(sets::intervals(), s.values);
    CHECK(zb.per_rep[static_cast<std::size_t>(r)] <= static_cast<double>(t.n()));
    CHECK(exact_conditional_rademacher(t) <= massart_trace_bound(t));
    std::vector<std::vector<double>> vecs;
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::vector<double> v(static_cast<std::size_t>(t.n()), 0.0);
      for (int i : t.indices(k)) v[static_cast<std::size_t>(i)] = 1.0;
      vecs.push_back(v);
    }
    CHECK_THAT(massart_trace_bound(t), WithinAbs(oracle::massart_literal(vecs), 1e-12));
  }
}

TEST_CASE("determinism across thread counts", "[montecarlo]") {
  for (const char* fam : {"intervals-capped", "halflines", "monotone", "centered-halved:intervals"}) {
    auto a = config(fam, 40, 300, 8);
    auto b = a;
    b.jobs = 8;
    const auto za = estimate_Z(a), zb = estimate_Z(b);
    CHECK(za.mean == zb.mean);
    CHECK(za.std_error == zb.std_error);
    const auto ra = estimate_Zbar(a), rb = estimate_Zbar(b);
    CHECK(ra.mean == rb.mean);
    CHECK(ra.std_error == rb.std_error);
  }
}

TEST_CASE("estimates are stable when reps double", "[montecarlo]") {
  int agree = 0;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto a = estimate_Z(config("intervals-capped", 50, 500, seed));
    const auto b = estimate_Z(config("intervals-capped", 50, 1000, seed + 1000));
    if (std::abs(a.mean - b.mean) <= 3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error)) ++agree;
  }
  CHECK(agree >= 9);
}

TEST_CASE("removing the cap never lowers per-replicate suprema", "[montecarlo]") {
  auto capped = config("intervals-capped", 30, 100, 9, 0.04);
  auto full = config("intervals", 30, 100, 9);
  capped.keep_per_rep = full.keep_per_rep = true;
  const auto zc = estimate_Zbar(capped), zf = estimate_Zbar(full);
  for (std::size_t r = 0; r < zc.per_rep.size(); ++r) CHECK(zc.per_rep[r] <= zf.per_rep[r]);
}

TEST_CASE("symmetrization", "[montecarlo]") {
  SECTION("exhaustive signs on half-lines") {
    for (int n = 2; n <= 10; n += 2) {
      const auto r = symmetrization_check(config("halflines", n, 400, 10), true);
      CHECK(r.rhs.std_error == 0.0);
      CHECK(r.pass);
      CHECK(r.shifted_pass);
    }
  }
  SECTION("capped intervals") {
    const auto r = symmetrization_check(config("intervals-capped", 50, 2000, 11, 0.25));
    CHECK(r.pass);
    CHECK(r.shifted_pass);
    CHECK(r.lhs.mean > 0.0);
  }
  SECTION("non-identical laws") {
    auto c = config("halflines", 6, 1000, 12);
    for (int i = 0; i < 6; ++i)
      c.per_index.push_back(i % 2 ? Distribution::uniform() : Distribution::discrete({0.2, 0.7}, {0.5, 0.5}));
    const auto r = symmetrization_check(c);
    CHECK(r.pass);
  }
}

TEST_CASE("dominance sweep", "[montecarlo]") {
  SweepConfig sc;
  sc.sigmas = {0.1, 0.5, 1.0};
  sc.ns = {50, 100};
  sc.reps = 400;
  sc.seed = 13;
  sc.bounds = {"thm1", "thm2", "prop4", "cor_set", "betal"};
  const auto rows = dominance_sweep(sc);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.all_pass());
    for (const auto& c : r.checks) {
      if (c.name == "betal" && !c.valid) CHECK(std::isnan(c.margin));
      if (c.valid) CHECK(c.margin == c.value - (r.z.mean + 3.0 * r.z.std_error));
    }
  }
  SweepConfig single;
  single.family = "constant";
  single.ns = {20};
  single.reps = 50;
  const auto srows = dominance_sweep(single);
  REQUIRE(srows.size() == 1);
  CHECK(srows[0].z.mean == 0.0);
  CHECK(srows[0].all_pass());
}

TEST_CASE("configuration errors", "[montecarlo]") {
  auto c = config("halflines", 5, 1, 1);
  CHECK_THROWS_AS(estimate_Z(c), std::invalid_argument);
  c.reps = 10;
  c.per_index = {Distribution::uniform()};
  CHECK_THROWS_AS(estimate_Z(c), std::invalid_argument);
  auto d = config("intervals", 5, 10, 1);
  d.dist = Distribution::discrete({0.5}, {1.0});
  CHECK_THROWS_AS(estimate_Z(d), UnsupportedFamily);
}

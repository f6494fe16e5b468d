#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "vcmajor/families.hpp"
#include "vcmajor/shatter.hpp"
#include "vcmajor/stats.hpp"

using namespace vcmajor;
using Catch::Matchers::WithinAbs;

namespace {

Sample uniform_sample(std::vector<double> x) { return Sample{std::move(x), {Distribution::uniform()}}; }

std::vector<int> random_signs(int n, Rng& rng) {
  std::vector<int> e(static_cast<std::size_t>(n));
  for (auto& v : e) v = rademacher(rng);
  return e;
}

std::vector<double> random_points(int n, Rng& rng, bool ties) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = ties ? std::floor(uniform01(rng) * 6.0) / 6.0 : uniform01(rng);
  return x;
}

std::vector<double> to_double(const std::vector<int>& e) { return {e.begin(), e.end()}; }

// Registry names plus a centered-halved instance.
std::vector<std::string> concrete_families() {
  std::vector<std::string> out;
  for (const auto& name : family_names())
    out.push_back(name.find('<') == std::string::npos ? name : "centered-halved:intervals");
  return out;
}

FamilyPtr make(const std::string& name) {
  FamilyOptions opt;
  opt.cap = 0.09;
  return make_family(name, opt);
}

}  // namespace

TEST_CASE("half-line Rademacher sup", "[families]") {
  CHECK(sup_rademacher_halflines(std::vector<double>{0.2, 0.5, 0.9}, std::vector<int>{1, -1, 1}) == 1.0);
  CHECK(sup_rademacher_halflines(std::vector<double>{0.4, 0.1, 0.8, 0.3}, std::vector<int>{1, 1, 1, 1}) == 4.0);
  CHECK(sup_rademacher_halflines(std::vector<double>{0.1, 0.2, 0.3, 0.4}, std::vector<int>{1, -1, 1, -1}) == 1.0);
  Rng rng = make_rng(21, stream::kSample, 0);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 1 + rep % 12;
    const auto x = random_points(n, rng, rep % 3 == 0);
    const auto e = random_signs(n, rng);
    CHECK(sup_rademacher_halflines(x, e) == oracle::sup_over_sets(oracle::upper_halfline_traces(x), e));
  }
}

TEST_CASE("interval Rademacher sup", "[families]") {
  CHECK(sup_rademacher_intervals(std::vector<double>{0.1, 0.2, 0.3, 0.4}, std::vector<int>{1, -1, 1, 1}) == 2.0);
  CHECK(sup_rademacher_intervals(std::vector<double>{0.1, 0.2, 0.3, 0.4}, std::vector<int>{1, 1, 1, 1}, 0.05) == 1.0);
  Rng rng = make_rng(22, stream::kSample, 0);
  SECTION("brute-force windows") {
    for (int rep = 0; rep < 1000; ++rep) {
      const int n = 1 + rep % 12;
      const auto x = random_points(n, rng, rep % 3 == 0);
      const auto e = random_signs(n, rng);
      CHECK(sup_rademacher_intervals(x, e) == oracle::sup_over_sets(oracle::interval_traces(x), e));
      const double cap = uniform01(rng) * 0.6;
      CHECK(sup_rademacher_intervals(x, e, cap) == oracle::sup_over_sets(oracle::interval_traces(x, cap), e));
    }
  }
  SECTION("maximum subarray on the sorted order") {
    for (int rep = 0; rep < 1000; ++rep) {
      const int n = 1 + rep % 30;
      const auto x = random_points(n, rng, false);
      const auto e = random_signs(n, rng);
      const auto order = oracle::sort_order(x);
      auto kadane = [&](int sign) {
        int best = 0, cur = 0;
        for (auto i : order) {
          cur = std::max(0, cur + sign * e[i]);
          best = std::max(best, cur);
        }
        return best;
      };
      CHECK(sup_rademacher_intervals(x, e) == std::max(kadane(1), kadane(-1)));
    }
  }
  SECTION("removing the cap never lowers the sup") {
    for (int rep = 0; rep < 300; ++rep) {
      const int n = 1 + rep % 25;
      const auto x = random_points(n, rng, false);
      const auto e = random_signs(n, rng);
      const double capped = sup_rademacher_intervals(x, e, 0.1);
      CHECK(capped <= sup_rademacher_intervals(x, e));
      CHECK(capped >= 1.0);
      CHECK(sup_rademacher_intervals(x, e) <= n);
    }
  }
}

TEST_CASE("monotone Rademacher sup", "[families]") {
  using D = Monotone::Direction;
  const std::vector<double> x3{0.2, 0.5, 0.9};
  CHECK(sup_rademacher_monotone(x3, std::vector<int>{1, -1, 1}, D::Nondecreasing) == 1.0);
  CHECK(sup_rademacher_monotone(x3, std::vector<int>{-1, -1, -1}, D::Nondecreasing) == 3.0);
  Rng rng = make_rng(23, stream::kSample, 0);
  for (int rep = 0; rep < 400; ++rep) {
    const int n = 1 + rep % 10;
    const auto x = random_points(n, rng, rep % 4 == 0);
    const auto e = random_signs(n, rng);
    const double up = sup_rademacher_monotone(x, e, D::Nondecreasing);
    const double down = sup_rademacher_monotone(x, e, D::Nonincreasing);
    CHECK(up == sup_rademacher_halflines(x, e));
    CHECK(up == oracle::monotone_vertex_sup(x, e, true));
    CHECK(down == oracle::monotone_vertex_sup(x, e, false));
    CHECK(sup_rademacher_monotone(x, e, D::Either) == std::max(up, down));
    // random interior points of the polytope never beat the vertices
    Monotone fam(D::Nondecreasing);
    for (int k = 0; k < 20; ++k) {
      const auto f = fam.random_member(rng);
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += e[static_cast<std::size_t>(i)] * f(x[static_cast<std::size_t>(i)]);
      CHECK(std::abs(s) <= up + 1e-12);
    }
  }
}

TEST_CASE("empirical sup of intervals", "[families]") {
  CHECK_THAT(sup_empirical_intervals(uniform_sample({0.5})), WithinAbs(1.0, 1e-15));
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  CHECK_THAT(sup_empirical_intervals(uniform_sample(grid), 1e-12), WithinAbs(1.0, 1e-9));
  CHECK_THROWS_AS(sup_empirical_intervals(Sample{{0.5}, {Distribution::discrete({0.5}, {1.0})}}), UnsupportedFamily);

  Rng rng = make_rng(24, stream::kSample, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(uniform_int(rng, 0, 49));
    const auto x = random_points(n, rng, rep % 5 == 0);
    const auto s = uniform_sample(x);
    const double exact = sup_empirical_intervals(s);
    CHECK_THAT(exact, WithinAbs(oracle::empirical_intervals_enum(x), 1e-12));
    CHECK(oracle::empirical_intervals_random(x, 1.0, 10000, rng) <= exact + 1e-12);
    const double cap = 0.02 + uniform01(rng) * 0.5;
    const double capped = sup_empirical_intervals(s, cap);
    CHECK_THAT(capped, WithinAbs(oracle::empirical_intervals_enum(x, cap), 1e-12));
    CHECK(oracle::empirical_intervals_random(x, cap, 10000, rng) <= capped + 1e-12);
    CHECK(capped <= exact + 1e-12);
  }
}

TEST_CASE("empirical sup of half-lines and monotone functions", "[families]") {
  HalfLines hl;
  Monotone mono(Monotone::Direction::Nondecreasing);
  Rng rng = make_rng(25, stream::kSample, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 20;
    const auto x = random_points(n, rng, rep % 4 == 0);
    const auto s = uniform_sample(x);
    // Kolmogorov-Smirnov statistic times n
    double ks = 0.0;
    for (double a : x)
      for (int closed = 0; closed < 2; ++closed) {
        double count = 0.0;
        for (double v : x) count += closed ? (v >= a) : (v > a);
        ks = std::max(ks, std::abs(count - n * (1.0 - a)));
      }
    ks = std::max(ks, 0.0);
    CHECK_THAT(hl.sup_empirical(s), WithinAbs(ks, 1e-12));
    CHECK(mono.sup_empirical(s) == hl.sup_empirical(s));
  }
}

TEST_CASE("families report ranges, dimensions and sigma", "[families]") {
  Rng rng = make_rng(26, stream::kSample, 0);
  for (const auto& name : concrete_families()) {
    const auto fam = make(name);
    INFO(name);
    const auto r = fam->range();
    for (int k = 0; k < 200; ++k) {
      const auto f = fam->random_member(rng);
      for (int j = 0; j < 10; ++j) {
        const double v = f(uniform(rng, -0.5, 1.5));
        CHECK(v >= r.lo - 1e-12);
        CHECK(v <= r.hi + 1e-12);
      }
    }
    CHECK(fam->declared_weak_dim() >= 0);
    CHECK_FALSE(fam->dim_note().empty());
  }
  CHECK_THAT(Intervals(0.09).sigma_of(Distribution::uniform()), WithinAbs(0.3, 1e-15));
  CHECK_THROWS_AS(make_family("no-such-family"), std::invalid_argument);
}

TEST_CASE("sigma agrees with a Monte Carlo RMS", "[families]") {
  Rng rng = make_rng(27, stream::kSample, 0);
  const int m = 200000;
  // the maximizing member of intervals-capped: an interval of full length cap
  const double cap = 0.09;
  std::vector<double> hits(m);
  for (auto& h : hits) {
    const double v = uniform01(rng);
    h = (v >= 0.4 && v <= 0.4 + cap) ? 1.0 : 0.0;
  }
  const auto e = summarize(hits);
  const double sigma = Intervals(cap).sigma_of(Distribution::uniform());
  CHECK(std::abs(e.mean - sigma * sigma) <= 3.0 * e.std_error);
}

TEST_CASE("level sets match direct evaluation", "[families]") {
  Rng rng = make_rng(28, stream::kSample, 0);
  for (const auto& name : concrete_families()) {
    const auto fam = make(name);
    for (int rep = 0; rep < 10; ++rep) {
      const auto x = random_points(6, rng, false);
      for (double u : {-0.5, 0.0, 0.3, 0.7, 1.0}) {
        const auto t = trace(fam->level_family(u), x);
        std::set<std::vector<int>> traces;
        for (std::size_t k = 0; k < t.size(); ++k) traces.insert(t.indices(k));
        for (int j = 0; j < 50; ++j) {
          const auto f = fam->random_member(rng);
          std::vector<int> s;
          for (int i = 0; i < 6; ++i)
            if (f(x[static_cast<std::size_t>(i)]) > u) s.push_back(i);
          INFO(name << " u=" << u);
          CHECK(traces.count(s) == 1);
        }
      }
    }
  }
}

TEST_CASE("weighted extremes dominate every member", "[families]") {
  Rng rng = make_rng(29, stream::kSample, 0);
  for (const auto& name : concrete_families()) {
    const auto fam = make(name);
    for (int rep = 0; rep < 20; ++rep) {
      const int n = 1 + rep % 8;
      const auto x = random_points(n, rng, rep % 3 == 0);
      const auto e = random_signs(n, rng);
      const auto w = to_double(e);
      const auto ext = fam->weighted_extremes(x, w);
      CHECK(ext.min <= ext.max);
      for (int j = 0; j < 50; ++j) {
        const auto f = fam->random_member(rng);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += w[static_cast<std::size_t>(i)] * f(x[static_cast<std::size_t>(i)]);
        INFO(name);
        CHECK(s <= ext.max + 1e-12);
        CHECK(s >= ext.min - 1e-12);
      }
      CHECK(fam->sup_rademacher(x, e) >= 0.0);
      CHECK(fam->sup_rademacher(x, e) <= n * std::max(std::abs(fam->range().lo), std::abs(fam->range().hi)) + 1e-12);
    }
  }
}

TEST_CASE("centered and halved families", "[families]") {
  const auto dist = Distribution::uniform();
  SECTION("constant base collapses to zero") {
    const auto g = center_halve(std::make_shared<Constant>(0.7), dist);
    Rng rng = make_rng(30, stream::kSample, 0);
    const auto f = g->random_member(rng);
    CHECK(f(0.3) == 0.0);
    CHECK(g->sigma_of(dist) == 0.0);
    CHECK(g->sup_rademacher(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}) == 0.0);
  }
  SECTION("half-line indicators shift by their mass") {
    const auto g = center_halve(std::make_shared<HalfLines>(), dist);
    const auto& ch = dynamic_cast<const CenteredHalved&>(*g);
    (void)ch;
    Rng rng = make_rng(31, stream::kSample, 0);
    HalfLines base;
    for (int k = 0; k < 20; ++k) {
      Rng a = rng, b = rng;
      const auto f = base.random_member(a);
      const auto gf = g->random_member(b);
      rng = a;
      const double mean = dist.mean(f);
      for (double x : {-0.2, 0.1, 0.5, 0.9, 1.3}) CHECK_THAT(gf(x), WithinAbs(0.5 * (f(x) - mean), 1e-15));
    }
    CHECK_THAT(g->sigma_of(dist), WithinAbs(0.25, 1e-15));
  }
  SECTION("sigma halves the base standard deviation") {
    const auto g = center_halve(std::make_shared<Intervals>(0.09), dist);
    CHECK_THAT(g->sigma_of(dist), WithinAbs(0.5 * std::sqrt(0.09 * 0.91), 1e-15));
  }
  SECTION("discrete laws use atom masses") {
    const auto d = Distribution::discrete({0.1, 0.5, 0.9}, {0.2, 0.3, 0.5});
    const auto g = center_halve(std::make_shared<HalfLines>(), d);
    // best half-line mass closest to 1/2: {x >= 0.9} or {x <= 0.1}-complement with mass 0.5
    CHECK_THAT(g->sigma_of(d), WithinAbs(0.25, 1e-15));
  }
  SECTION("empirical sup is half the base one") {
    Rng rng = make_rng(32, stream::kSample, 0);
    const auto base = std::make_shared<Intervals>();
    const auto g = center_halve(base, dist);
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = uniform_sample(random_points(10, rng, false));
      CHECK_THAT(g->sup_empirical(s), WithinAbs(0.5 * base->sup_empirical(s), 1e-15));
    }
  }
  SECTION("weighted extremes match the shifted indicators") {
    Rng rng = make_rng(33, stream::kSample, 0);
    const auto g = center_halve(std::make_shared<Intervals>(), dist);
    for (int rep = 0; rep < 30; ++rep) {
      const int n = 2 + rep % 6;
      const auto x = random_points(n, rng, false);
      const auto w = to_double(random_signs(n, rng));
      double total = 0.0;
      for (double v : w) total += v;
      // brute force over closed data windows and the empty set
      double best = 0.0;
      const auto order = oracle::sort_order(x);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int k = i; k <= j; ++k) s += w[order[static_cast<std::size_t>(k)]];
          const double len = x[order[static_cast<std::size_t>(j)]] - x[order[static_cast<std::size_t>(i)]];
          best = std::max(best, 0.5 * (s - total * len));
        }
      // open gaps approach count 0 with the largest length
      CHECK(g->weighted_extremes(x, w).max >= best - 1e-12);
    }
  }
  SECTION("sampler-only laws are rejected") {
    const auto d = Distribution::sampler_only("normal", [](Rng& r) { return uniform01(r); });
    CHECK_THROWS_AS(center_halve(std::make_shared<HalfLines>(), d), UnavailableMean);
  }
}

TEST_CASE("centered family weak dimension stays below the base VC-major dimension", "[families]") {
  Rng rng = make_rng(34, stream::kSample, 0);
  for (const char* base : {"halflines", "intervals", "monotone-nondecr", "monotone", "translated-monotone"}) {
    const auto g = make_family(std::string("centered-halved:") + base);
    const int d = make_family(base)->declared_vc_major_dim().value();
    for (int rep = 0; rep < 20; ++rep) {
      const auto x = random_points(3 + rep % 5, rng, false);
      INFO(base);
      CHECK(weak_vc_dim_estimate(*g, x) <= d);
    }
  }
}

#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "sumset/errors.hpp"
#include "sumset/sumset.hpp"

using namespace sumset;

namespace {

const auto kB = PointConfig::from_ints(2, {{0, 0}, {2, 0}, {3, 0}, {0, 1}});

std::vector<IPoint> sorted(const std::set<IPoint>& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("grid matches repeated set addition on the corpus") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const auto pts = e.a.to_ipoints();
    SumsetGrid grid(e.a, 4);
    for (std::int64_t n = 1; n <= 4; ++n) {
      grid.advance();
      const auto want = sorted(oracle::sumset(pts, n));
      CHECK(grid.points() == want);
      CHECK(grid.cardinality() == want.size());
    }
  }
}

TEST_CASE("growth table") {
  const auto t = sumset_iterate(PointConfig::from_ints(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}), 4, true);
  REQUIRE(t.rows.size() == 4);
  for (std::int64_t n = 1; n <= 4; ++n) {
    CHECK(t.rows[n - 1].n == n);
    CHECK(t.rows[n - 1].cardinality == static_cast<std::uint64_t>((n + 1) * (n + 1)));
    REQUIRE(t.rows[n - 1].points.has_value());
    CHECK(t.rows[n - 1].points->size() == t.rows[n - 1].cardinality);
  }
  const auto lean = sumset_iterate(PointConfig::from_ints(1, {{0}, {3}, {5}}), 6);
  CHECK_FALSE(lean.rows[0].points.has_value());
  CHECK(lean.rows[5].cardinality == 25);
}

TEST_CASE("grid budget is enforced") {
  const auto a = PointConfig::from_ints(2, {{0, 0}, {4, 0}, {0, 4}});
  CHECK(SumsetGrid::max_feasible_n(a, 1000) == 7);
  try {
    sumset_iterate(a, 50, false, 1000);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(e.reached() == 7);
  }
}

TEST_CASE("grid handles negative coordinates") {
  const auto a = PointConfig::from_ints(2, {{-2, 1}, {0, -1}, {3, 3}});
  SumsetGrid grid(a, 3);
  for (std::int64_t n = 1; n <= 3; ++n) {
    grid.advance();
    CHECK(grid.points() == sorted(oracle::sumset(a.to_ipoints(), n)));
  }
  CHECK(grid.contains({-6, 3}));
  CHECK_FALSE(grid.contains({-5, 3}));
}

TEST_CASE("semigroup membership examples") {
  auto m = semigroup_contains(kB, {5, 0});
  CHECK(m.member);
  CHECK(m.coefficients == std::vector<std::int64_t>{0, 1, 1, 0});
  CHECK_FALSE(semigroup_contains(kB, {1, 7}).member);
  m = semigroup_contains(kB, {0, 0});
  CHECK(m.member);
  CHECK(m.coefficients == std::vector<std::int64_t>{0, 0, 0, 0});
  CHECK_THROWS_AS(semigroup_contains(PointConfig::from_ints(1, {{-1}, {0}, {1}}), {1}), PreconditionError);
}

TEST_CASE("certificates reproduce the point") {
  SemigroupOracle o(kB);
  for (std::int64_t x = 0; x <= 9; ++x)
    for (std::int64_t y = 0; y <= 3; ++y) {
      const auto c = o.certificate({x, y});
      if (!c) continue;
      IPoint s{0, 0};
      for (std::size_t i = 0; i < kB.size(); ++i) {
        CHECK((*c)[i] >= 0);
        s[0] += (*c)[i] * kB.to_ipoints()[i][0];
        s[1] += (*c)[i] * kB.to_ipoints()[i][1];
      }
      CHECK(s == IPoint{x, y});
    }
}

TEST_CASE("minimum weight representations") {
  SemigroupOracle o(PointConfig::from_ints(1, {{0}, {3}, {5}}));
  CHECK(o.min_weight_representation({30}) == std::vector<std::int64_t>{0, 0, 6});
  CHECK(o.min_weight_representation({11}) == std::vector<std::int64_t>{0, 2, 1});
  CHECK_FALSE(o.min_weight_representation({7}).has_value());
  for (std::int64_t x = 0; x <= 40; ++x) {
    const auto r = o.min_weight_representation({x});
    if (!r) continue;
    // brute force: least a + b with 3a + 5b = x
    std::int64_t best = INT64_MAX;
    for (std::int64_t b = 0; 5 * b <= x; ++b)
      if ((x - 5 * b) % 3 == 0) best = std::min(best, b + (x - 5 * b) / 3);
    CHECK((*r)[1] + (*r)[2] == best);
  }
}

TEST_CASE("membership agrees with the brute-force oracle") {
  std::mt19937_64 rng(3);
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const auto a = normalize_config(e.a);
    const auto pts = a.to_ipoints();
    oracle::Points gens;
    for (const auto& p : pts)
      if (std::any_of(p.begin(), p.end(), [](std::int64_t v) { return v != 0; })) gens.push_back(p);
    SemigroupOracle o(a);
    for (const auto& x : oracle::dilate_box(pts, 2)) {
      CHECK(o.contains(x) == oracle::in_semigroup(gens, x));
      CHECK(o.in_cone(x) == oracle::in_cone(gens, x));
    }
  }
}

TEST_CASE("exceptional set examples") {
  CHECK(exceptional_in_region(kB, BoxRegion{{0, 0}, {3, 1}}) == std::vector<IPoint>{{1, 0}, {1, 1}});
  CHECK(exceptional_in_region(PointConfig::from_ints(1, {{0}, {3}, {5}}), BoxRegion{{0}, {12}}) ==
        std::vector<IPoint>{{1}, {2}, {4}, {7}});
  const auto sq = PointConfig::from_ints(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(exceptional_in_region(sq, BoxRegion{{-3, -3}, {6, 6}}).empty());
  CHECK(exceptional_in_region(sq, DilateRegion{5}).empty());
}

TEST_CASE("exceptional set agrees with a sieve in one dimension") {
  for (const auto& gens : std::vector<std::vector<long>>{{3, 5}, {4, 7}, {5, 6, 11}, {7, 9, 10}}) {
    std::vector<std::vector<long>> pts{{0}};
    for (long g : gens) pts.push_back({g});
    const auto a = PointConfig::from_ints(1, pts);
    std::vector<bool> reach(80, false);
    reach[0] = true;
    for (std::size_t x = 1; x < reach.size(); ++x)
      for (long g : gens)
        if (static_cast<long>(x) >= g && reach[x - g]) reach[x] = true;
    std::vector<IPoint> gaps;
    for (std::size_t x = 0; x < reach.size(); ++x)
      if (!reach[x]) gaps.push_back({static_cast<std::int64_t>(x)});
    CHECK(exceptional_in_region(a, BoxRegion{{0}, {79}}) == gaps);
  }
}

TEST_CASE("region points") {
  CHECK(region_points(PointConfig::from_ints(1, {{0}, {2}}), DilateRegion{2}) ==
        std::vector<IPoint>{{0}, {1}, {2}, {3}, {4}});
  CHECK(region_points(kB, BoxRegion{{0, 0}, {1, 1}}).size() == 4);
}

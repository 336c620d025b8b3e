#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "sumset/errors.hpp"
#include "sumset/polytope.hpp"

using namespace sumset;

namespace {

const auto kTriangle = PointConfig::from_ints(2, {{0, 0}, {3, 0}, {0, 3}, {1, 1}});
const auto kSquare = PointConfig::from_ints(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
const auto k035 = PointConfig::from_ints(1, {{0}, {3}, {5}});

RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

// Normal of the hyperplane through d points in R^d, by cofactor expansion.
oracle::Vec hyperplane_normal(const oracle::Points& pts) {
  const std::size_t d = pts.front().size();
  if (d == 1) return {1};
  oracle::Vec n(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<std::vector<BigInt>> m;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) row.emplace_back(static_cast<long>(pts[i][j] - pts[0][j]));
      m.push_back(row);
    }
    const BigInt det = oracle::determinant(m);
    n[k] = (k % 2 ? -1 : 1) * det.get_si();
  }
  return n;
}

// Largest far/near height ratio over supporting hyperplanes through d points.
Rational kappa_oracle(const oracle::Points& a) {
  const std::size_t d = a.front().size();
  Rational best = 0;
  oracle::for_subsets(a.size(), d, [&](const std::vector<std::size_t>& s) {
    oracle::Points face;
    for (auto i : s) face.push_back(a[i]);
    const auto n = hyperplane_normal(face);
    if (std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v == 0; })) return;
    std::vector<std::int64_t> h;
    for (const auto& p : a) {
      std::int64_t v = 0;
      for (std::size_t k = 0; k < d; ++k) v += n[k] * (p[k] - face[0][k]);
      h.push_back(v);
    }
    const bool below = std::all_of(h.begin(), h.end(), [](std::int64_t v) { return v <= 0; });
    const bool above = std::all_of(h.begin(), h.end(), [](std::int64_t v) { return v >= 0; });
    if (!below && !above) return;
    std::int64_t lo = INT64_MAX, hi = 0;
    for (auto v : h)
      if (v != 0) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
      }
    if (hi > 0) best = std::max(best, fraction(hi, lo));
  });
  return best;
}

// d! Vol from the d-th forward difference of brute-force lattice counts.
BigInt normalized_volume_oracle(const oracle::Points& a) {
  const std::size_t d = a.front().size();
  std::vector<BigInt> counts;
  for (std::size_t n = 0; n <= d; ++n)
    counts.emplace_back(static_cast<unsigned long>(n == 0 ? 1 : oracle::lattice_count(a, static_cast<std::int64_t>(n))));
  for (std::size_t level = 0; level < d; ++level)
    for (std::size_t i = 0; i + 1 < counts.size() - level; ++i) counts[i] = counts[i + 1] - counts[i];
  return counts[0];
}

}  // namespace

TEST_CASE("convex hull of the triangle with an interior point") {
  const auto p = convex_hull(kTriangle);
  CHECK(p.extremal == std::vector<Point>{{0, 0}, {3, 0}, {0, 3}});
  REQUIRE(p.outer_facets.size() == 1);
  CHECK(p.outer_facets[0].coefficients == rv({Rational(1, 3), Rational(1, 3)}));
  CHECK(p.outer_facets[0].incident == std::vector<std::size_t>{1, 2});
  REQUIRE(p.inner_facets.size() == 2);
  std::vector<RationalVector> gammas{p.inner_facets[0].coefficients, p.inner_facets[1].coefficients};
  std::sort(gammas.begin(), gammas.end());
  CHECK(gammas == std::vector<RationalVector>{rv({0, 1}), rv({1, 0})});
}

TEST_CASE("convex hull in one dimension") {
  const auto p = convex_hull(k035);
  CHECK(p.extremal == std::vector<Point>{{0}, {5}});
  REQUIRE(p.outer_facets.size() == 1);
  CHECK(p.outer_facets[0].coefficients == rv({Rational(1, 5)}));
  REQUIRE(p.inner_facets.size() == 1);
  CHECK(p.inner_facets[0].coefficients == rv({1}));
}

TEST_CASE("convex hull of the unit square") {
  const auto p = convex_hull(kSquare);
  CHECK(p.extremal.size() == 4);
  std::vector<RationalVector> betas;
  for (const auto& f : p.outer_facets) betas.push_back(f.coefficients);
  std::sort(betas.begin(), betas.end());
  CHECK(betas == std::vector<RationalVector>{rv({0, 1}), rv({1, 0})});
  CHECK(p.inner_facets.size() == 2);
}

TEST_CASE("degenerate span is rejected") {
  CHECK_THROWS_AS(convex_hull(PointConfig::from_ints(2, {{0, 0}, {1, 1}, {2, 2}})), DimensionError);
  CHECK_THROWS_AS(volumes(PointConfig::from_ints(2, {{0, 0}, {1, 1}})), DimensionError);
}

TEST_CASE("kappa examples") {
  CHECK(kappa(kSquare) == 1);
  CHECK(kappa(kTriangle) == 3);
  CHECK(kappa(k035) == Rational(5, 2));
}

TEST_CASE("facet functional examples") {
  const auto p = convex_hull(kTriangle);
  const auto& beta = facet_functional(p, {FacetKind::outer, 0});
  CHECK(beta.evaluate(Point{1, 1}) == Rational(2, 3));
  CHECK(beta.evaluate(Point{1, 1}) >= 1 - kappa(kTriangle));
  CHECK(facet_functional(convex_hull(k035), {FacetKind::outer, 0}).evaluate(Point{3}) == Rational(3, 5));

  const auto sq = convex_hull(kSquare);
  Rational least = 1;
  for (const auto& f : sq.outer_facets)
    for (const auto& x : kSquare.points()) least = std::min(least, f.evaluate(x));
  CHECK(least == 0);
  CHECK(least == 1 - kappa(kSquare));
  CHECK_THROWS(facet_functional(p, {FacetKind::outer, 5}));
}

TEST_CASE("volumes") {
  auto v = volumes(kTriangle);
  CHECK(v.vol == Rational(9, 2));
  CHECK(v.vol_dag_max == 9);
  CHECK(v.vol_dag_min == 3);
  v = volumes(k035);
  CHECK(v.vol == 5);
  CHECK(v.vol_dag_max == 5);
  CHECK(v.width == 5);
  v = volumes(kSquare);
  CHECK(v.vol == 1);
  CHECK(v.vol_dag_max == 1);
  CHECK(v.width == 1);
}

TEST_CASE("triangulation examples") {
  auto t = triangulate_from_origin(kSquare);
  std::sort(t.simplices.begin(), t.simplices.end());
  CHECK(t.simplices == std::vector<std::vector<Point>>{{{0, 1}, {1, 1}}, {{1, 0}, {1, 1}}});

  t = triangulate_from_origin(kTriangle);
  REQUIRE(t.simplices.size() == 1);
  auto s = t.simplices[0];
  std::sort(s.begin(), s.end());
  CHECK(s == std::vector<Point>{{0, 3}, {3, 0}});

  t = triangulate_from_origin(PointConfig::from_ints(1, {{0}, {5}}));
  CHECK(t.simplices == std::vector<std::vector<Point>>{{{5}}});

  CHECK_THROWS_AS(triangulate_from_origin(PointConfig::from_ints(1, {{-1}, {0}, {5}})), PreconditionError);
}

TEST_CASE("dilate point counts") {
  CHECK(count_dilate_points(k035, 4) == 21);
  CHECK(count_dilate_points(kSquare, 3) == 16);
  CHECK(count_dilate_points(PointConfig::from_ints(2, {{0, 0}, {1, 0}, {0, 1}}), 4) == 15);
  CHECK(enumerate_dilate_points(kSquare, 1) == std::vector<IPoint>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("corpus geometry against brute-force oracles") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const auto a = normalize_config(e.a);
    const auto pts = a.to_ipoints();
    const auto p = convex_hull(a);

    std::vector<Point> want;
    for (const auto& v : oracle::vertices(pts)) want.emplace_back(v.begin(), v.end());
    auto got = p.extremal;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    CHECK(got == want);

    for (std::int64_t n = 1; n <= 3; ++n)
      CHECK(count_dilate_points(a, n) == BigInt(static_cast<unsigned long>(oracle::lattice_count(pts, n))));

    const auto v = volumes(a);
    const BigInt fact = factorial(static_cast<unsigned>(a.dim()));
    CHECK(v.vol * fact == Rational(normalized_volume_oracle(pts)));
    CHECK(kappa(a) == kappa_oracle(pts));
    CHECK(kappa(a) == kappa_from_normals(a));

    // triangulation additivity
    Rational total = 0;
    for (const auto& s : triangulate_from_origin(a).simplices) {
      std::vector<std::vector<BigInt>> m(a.dim(), std::vector<BigInt>(a.dim()));
      for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k) m[k][j] = s[j][k];
      total += fraction(abs(oracle::determinant(m)), fact);
    }
    CHECK(total == v.vol);

    // half-space form agrees with the rational facets
    const auto hs = half_spaces(a, p);
    for (const auto& x : enumerate_dilate_points(a, 2)) CHECK(hs.contains_dilate(x, 2));
  }
}

TEST_CASE("geometry identities on the corpus") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const auto a = normalize_config(e.a);
    const auto v = volumes(a);
    const auto d = static_cast<unsigned>(a.dim());
    CHECK(kappa(a) <= fraction(v.vol_dag_max, v.vol_dag_min));
    CHECK(Rational(v.vol_dag_max) <= v.vol * factorial(d));
    CHECK(v.vol_dag_max * v.vol_dag_max <= pow(BigInt(d), d) * pow(v.width, 2 * d));
  }
}

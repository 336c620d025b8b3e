#include "sumset/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sumset/errors.hpp"

namespace sumset {

namespace {

struct RawFacet {
  std::vector<std::size_t> incident;
  Point normal;  // primitive integer
  BigInt offset;
};

// Calls fn(indices) for every k-subset of {0..n-1}, in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Point primitive(const RationalVector& v) {
  BigInt den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  Point out;
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt y = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
    out.push_back(std::move(y));
  }
  if (g > 1)
    for (auto& y : out) y /= g;
  return out;
}

template <typename Vec>
Rational dot(const Point& normal, const Vec& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * x[i];
  return s;
}

RationalVector to_rational(const Point& p) { return RationalVector(p.begin(), p.end()); }

std::size_t affine_rank(const std::vector<RationalVector>& pts) {
  if (pts.empty()) return 0;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector d(pts[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(d));
  }
  if (diffs.empty()) return 0;
  return pts[0].size() - rational_nullspace(diffs, pts[0].size()).size();
}

// Facets of conv(pts) where pts affinely span Q^k, by scanning k-subsets.
std::vector<RawFacet> facets_of(const std::vector<RationalVector>& pts, std::size_t k) {
  std::vector<RawFacet> out;
  if (k == 0) return out;
  std::set<std::vector<std::size_t>> seen;
  for_each_subset(pts.size(), k, [&](const std::vector<std::size_t>& subset) {
    std::vector<RationalVector> diffs;
    for (std::size_t j = 1; j < subset.size(); ++j) {
      RationalVector d(k);
      for (std::size_t c = 0; c < k; ++c) d[c] = pts[subset[j]][c] - pts[subset[0]][c];
      diffs.push_back(std::move(d));
    }
    auto null = rational_nullspace(diffs, k);
    if (null.size() != 1) return;
    Point normal = primitive(null.front());
    Rational offset = dot(normal, pts[subset[0]]);
    bool above = false, below = false;
    std::vector<std::size_t> incident;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Rational v = dot(normal, pts[i]);
      if (v > offset) above = true;
      else if (v < offset) below = true;
      else incident.push_back(i);
    }
    if (above && below) return;
    if (!seen.insert(incident).second) return;
    if (above) {
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    // normal is primitive and the points are integral at top level; offsets
    // of sub-faces (local rational coordinates) are only used for incidence.
    out.push_back(RawFacet{std::move(incident), std::move(normal), floor(offset)});
  });
  std::sort(out.begin(), out.end(),
            [](const RawFacet& x, const RawFacet& y) { return x.incident < y.incident; });
  return out;
}

std::vector<RationalVector> rational_points(const PointConfig& a) {
  std::vector<RationalVector> pts;
  for (const auto& p : a.points()) pts.push_back(to_rational(p));
  return pts;
}

void require_full_span(const PointConfig& a) {
  if (a.dim() == 0 || affine_rank(rational_points(a)) != a.dim())
    throw DimensionError(
        "the points do not span the ambient space; normalize the configuration first");
}

std::vector<RawFacet> top_facets(const PointConfig& a) {
  require_full_span(a);
  return facets_of(rational_points(a), a.dim());
}

bool vertex_by_incidence(const std::vector<RawFacet>& facets, std::size_t index, std::size_t d) {
  std::vector<RationalVector> normals;
  for (const auto& f : facets)
    if (std::binary_search(f.incident.begin(), f.incident.end(), index)) normals.push_back(to_rational(f.normal));
  if (normals.size() < d) return false;
  return d - rational_nullspace(normals, d).size() == d;
}

// Pulling triangulation of conv(verts); verts are vertices of the polytope.
std::vector<std::vector<Point>> pull(const std::vector<Point>& verts) {
  if (verts.size() == 1) return {{verts.front()}};
  const std::size_t ambient = verts.front().size();
  // Local affine coordinates: pick an independent set of difference vectors.
  std::vector<RationalVector> basis;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    RationalVector d(ambient);
    for (std::size_t c = 0; c < ambient; ++c) d[c] = verts[i][c] - verts[0][c];
    auto trial = basis;
    trial.push_back(d);
    if (ambient - rational_nullspace(trial, ambient).size() == trial.size()) basis = std::move(trial);
  }
  const std::size_t k = basis.size();
  std::vector<RationalVector> local;
  for (const auto& v : verts) {
    RationalVector d(ambient);
    for (std::size_t c = 0; c < ambient; ++c) d[c] = v[c] - verts[0][c];
    auto y = solve_in_span(basis, d);
    if (!y) throw InternalError("vertex outside the affine hull of its face");
    local.push_back(std::move(*y));
  }
  const std::size_t apex = static_cast<std::size_t>(
      std::min_element(verts.begin(), verts.end(), lex_less) - verts.begin());
  std::vector<std::vector<Point>> out;
  for (const auto& facet : facets_of(local, k)) {
    if (std::binary_search(facet.incident.begin(), facet.incident.end(), apex)) continue;
    std::vector<Point> sub;
    for (auto i : facet.incident) sub.push_back(verts[i]);
    for (auto& simplex : pull(sub)) {
      simplex.insert(simplex.begin(), verts[apex]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

IntMatrix columns_minus(const std::vector<Point>& cols, const Point& base) {
  const std::size_t d = base.size();
  IntMatrix m(d, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < d; ++r) m(r, c) = cols[c][r] - base[r];
  return m;
}

// Heights det(b1 - a, ..., bd - a) of the points off each facet, as positive
// integers; calls fn(max, min) per facet.
template <typename Fn>
void facet_height_extremes(const PointConfig& a, const Polytope& p, Fn&& fn) {
  const std::size_t d = a.dim();
  for (const FacetFunctional* f : p.all_facets()) {
    std::vector<Point> b;
    std::vector<RationalVector> chosen;
    for (auto i : f->incident) {
      auto trial = chosen;
      trial.push_back(to_rational(a[i]));
      if (affine_rank(trial) + 1 == trial.size()) {
        chosen = std::move(trial);
        b.push_back(a[i]);
      }
      if (b.size() == d) break;
    }
    if (b.size() != d) throw InternalError("facet spanned by fewer than d affinely independent points");
    std::optional<BigInt> hi, lo;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::binary_search(f->incident.begin(), f->incident.end(), i)) continue;
      BigInt g = abs(determinant(columns_minus(b, a[i])));
      if (g == 0) throw InternalError("point off a facet has zero height");
      if (!hi || g > *hi) hi = g;
      if (!lo || g < *lo) lo = g;
    }
    if (hi) fn(Rational(*hi), Rational(*lo));
  }
}

}  // namespace

Rational FacetFunctional::evaluate(const Point& x) const {
  Rational s = 0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) s += coefficients[i] * x[i];
  return s;
}

std::vector<const FacetFunctional*> Polytope::all_facets() const {
  std::vector<const FacetFunctional*> out;
  for (const auto& f : outer_facets) out.push_back(&f);
  for (const auto& f : inner_facets) out.push_back(&f);
  return out;
}

Polytope convex_hull(const PointConfig& a) {
  const auto raw = top_facets(a);
  Polytope p;
  p.dim = a.dim();
  for (const auto& f : raw) {
    FacetFunctional ff{FacetKind::outer, {}, f.incident, f.normal, f.offset};
    if (f.offset == 0) {
      ff.kind = FacetKind::inner;
      for (const auto& c : f.normal) ff.coefficients.push_back(Rational(-c));
      p.inner_facets.push_back(std::move(ff));
    } else if (f.offset > 0) {
      for (const auto& c : f.normal) ff.coefficients.push_back(fraction(c, f.offset));
      p.outer_facets.push_back(std::move(ff));
    } else {
      throw PreconditionError("the origin lies outside the convex hull; normalize the configuration first");
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (vertex_by_incidence(raw, i, a.dim())) {
      p.extremal_index.push_back(i);
      p.extremal.push_back(a[i]);
    }
  }
  return p;
}

bool is_extremal(const PointConfig& a, std::size_t index) {
  return vertex_by_incidence(top_facets(a), index, a.dim());
}

Volumes volumes(const PointConfig& a) {
  require_full_span(a);
  const std::size_t d = a.dim();
  Volumes v;
  v.vol = 0;
  v.vol_dag_max = 0;
  bool have_min = false;
  for_each_subset(a.size(), d + 1, [&](const std::vector<std::size_t>& s) {
    std::vector<Point> cols;
    for (std::size_t j = 1; j < s.size(); ++j) cols.push_back(a[s[j]]);
    BigInt det = abs(determinant(columns_minus(cols, a[s[0]])));
    if (det == 0) return;
    if (det > v.vol_dag_max) v.vol_dag_max = det;
    if (!have_min || det < v.vol_dag_min) {
      v.vol_dag_min = det;
      have_min = true;
    }
  });
  v.width = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      for (std::size_t c = 0; c < d; ++c) v.width = std::max(v.width, abs(BigInt(a[i][c] - a[j][c])));

  // Volume from an origin triangulation of a translate with a vertex at 0.
  std::vector<Point> shifted;
  const Point base = *std::min_element(a.points().begin(), a.points().end(), lex_less);
  for (const auto& p : a.points()) {
    Point q(d);
    for (std::size_t c = 0; c < d; ++c) q[c] = p[c] - base[c];
    shifted.push_back(std::move(q));
  }
  const Triangulation t = triangulate_from_origin(PointConfig(d, std::move(shifted)));
  const BigInt fact = factorial(static_cast<unsigned>(d));
  for (const auto& simplex : t.simplices)
    v.vol += fraction(abs(determinant(IntMatrix::from_columns(simplex, d))), fact);
  v.vol.canonicalize();
  return v;
}

Rational kappa(const PointConfig& a) {
  require_full_span(a);
  // Classification is irrelevant here; translate so the hull holds the origin.
  const Point base = a[0];
  std::vector<Point> shifted;
  for (const auto& p : a.points()) {
    Point q(a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c) q[c] = p[c] - base[c];
    shifted.push_back(std::move(q));
  }
  const PointConfig t(a.dim(), std::move(shifted));
  const Polytope p = convex_hull(t);
  Rational best = 0;
  facet_height_extremes(t, p, [&](const Rational& hi, const Rational& lo) {
    Rational r = hi / lo;
    r.canonicalize();
    if (r > best) best = r;
  });
  return best;
}

Rational kappa_from_normals(const PointConfig& a) {
  require_full_span(a);
  const auto raw = top_facets(a);
  Rational best = 0;
  for (const auto& f : raw) {
    std::optional<BigInt> hi, lo;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::binary_search(f.incident.begin(), f.incident.end(), i)) continue;
      BigInt h = f.offset;
      for (std::size_t c = 0; c < a.dim(); ++c) h -= f.normal[c] * a[i][c];
      if (!hi || h > *hi) hi = h;
      if (!lo || h < *lo) lo = h;
    }
    if (!hi) continue;
    Rational r(*hi, *lo);
    r.canonicalize();
    if (r > best) best = r;
  }
  return best;
}

const FacetFunctional& facet_functional(const Polytope& p, FacetId id) {
  if (id.kind != FacetKind::outer)
    throw PreconditionError("facet_functional: inner facets carry gamma, not beta");
  if (id.index >= p.outer_facets.size()) throw PreconditionError("facet_functional: facet id out of range");
  return p.outer_facets[id.index];
}

Triangulation triangulate_from_origin(const PointConfig& a) {
  const Polytope p = convex_hull(a);
  const auto origin = a.origin_index();
  if (!origin || !std::binary_search(p.extremal_index.begin(), p.extremal_index.end(), *origin))
    throw PreconditionError("triangulate_from_origin: the origin must be a vertex of H(A)");
  Triangulation t;
  for (const auto& f : p.outer_facets) {
    std::vector<Point> verts;
    for (auto i : f.incident)
      if (std::binary_search(p.extremal_index.begin(), p.extremal_index.end(), i)) verts.push_back(a[i]);
    for (auto& s : pull(verts)) {
      std::sort(s.begin(), s.end(), lex_less);
      t.simplices.push_back(std::move(s));
    }
  }
  std::sort(t.simplices.begin(), t.simplices.end());
  return t;
}

// ---------------------------------------------------------------------------

bool HalfSpaces::contains_dilate(const IPoint& x, std::int64_t n) const {
  for (std::size_t k = 0; k < normals.size(); ++k) {
    __int128 s = 0;
    for (std::size_t c = 0; c < x.size(); ++c) s += static_cast<__int128>(normals[k][c]) * x[c];
    if (s > static_cast<__int128>(offsets[k]) * n) return false;
  }
  return true;
}

HalfSpaces half_spaces(const PointConfig& a, const Polytope& p) {
  HalfSpaces h;
  for (const FacetFunctional* f : p.all_facets()) {
    IPoint n;
    for (const auto& c : f->normal) n.push_back(to_i64(c));
    h.normals.push_back(std::move(n));
    h.offsets.push_back(to_i64(f->offset));
  }
  const std::size_t d = a.dim();
  h.lo.assign(d, 0);
  h.hi.assign(d, 0);
  for (std::size_t c = 0; c < d; ++c) {
    h.lo[c] = h.hi[c] = to_i64(a[0][c]);
    for (const auto& q : a.points()) {
      h.lo[c] = std::min(h.lo[c], to_i64(q[c]));
      h.hi[c] = std::max(h.hi[c], to_i64(q[c]));
    }
  }
  return h;
}

namespace {

std::int64_t floor_div(__int128 num, std::int64_t den) {
  __int128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(__int128 num, std::int64_t den) { return -floor_div(-num, den); }

// Walks the lattice points of N H(A) in lexicographic order. The last
// coordinate is resolved as an interval, so `emit_run` receives a prefix and
// the closed range of the final coordinate.
template <typename Fn>
void scan_dilate(const HalfSpaces& h, std::int64_t n, Fn&& emit_run) {
  const std::size_t d = h.lo.size();
  IPoint x(d, 0);
  std::vector<__int128> partial(h.normals.size(), 0);
  auto recurse = [&](auto&& self, std::size_t c) -> void {
    const std::int64_t lo = h.lo[c] * n, hi = h.hi[c] * n;
    if (c + 1 == d) {
      std::int64_t a = lo, b = hi;
      for (std::size_t k = 0; k < h.normals.size(); ++k) {
        const __int128 rhs = static_cast<__int128>(h.offsets[k]) * n - partial[k];
        const std::int64_t coef = h.normals[k][c];
        if (coef > 0) b = std::min(b, floor_div(rhs, coef));
        else if (coef < 0) a = std::max(a, ceil_div(rhs, coef));
        else if (rhs < 0) return;
      }
      if (a <= b) emit_run(x, a, b);
      return;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      x[c] = v;
      for (std::size_t k = 0; k < h.normals.size(); ++k) partial[k] += static_cast<__int128>(h.normals[k][c]) * v;
      self(self, c + 1);
      for (std::size_t k = 0; k < h.normals.size(); ++k) partial[k] -= static_cast<__int128>(h.normals[k][c]) * v;
    }
  };
  recurse(recurse, 0);
}

}  // namespace

BigInt count_dilate_points(const PointConfig& a, std::int64_t n) {
  if (n < 0) throw PreconditionError("count_dilate_points: N must be nonnegative");
  const HalfSpaces h = half_spaces(a, convex_hull(a));
  BigInt total = 0;
  scan_dilate(h, n, [&](const IPoint&, std::int64_t lo, std::int64_t hi) { total += BigInt(static_cast<long>(hi - lo + 1)); });
  return total;
}

std::vector<IPoint> enumerate_dilate_points(const PointConfig& a, std::int64_t n) {
  if (n < 0) throw PreconditionError("enumerate_dilate_points: N must be nonnegative");
  const HalfSpaces h = half_spaces(a, convex_hull(a));
  std::vector<IPoint> out;
  scan_dilate(h, n, [&](const IPoint& prefix, std::int64_t lo, std::int64_t hi) {
    IPoint x = prefix;
    for (std::int64_t v = lo; v <= hi; ++v) {
      x.back() = v;
      out.push_back(x);
    }
  });
  return out;
}

}  // namespace sumset

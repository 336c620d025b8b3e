#include "verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "sumset/errors.hpp"

namespace sumset::cli {

namespace {

constexpr std::size_t kMaxSubsets = 200;
constexpr std::size_t kMaxRegularPoints = 300;

struct Context {
  const PointConfig& a;
  std::vector<IPoint> pts;
  Polytope hull;
  Volumes vol;
  std::size_t origin;
};

CheckResult guarded(const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  try {
    body(r);
  } catch (const ResourceError& e) {
    r.complete = false;
    r.detail = e.what();
  } catch (const Error& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

void fail(CheckResult& r, const std::string& detail) {
  if (r.passed) r.detail = detail;
  r.passed = false;
}

std::string render(const std::vector<BigInt>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string render(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

IPoint combine(const Context& c, const ExponentVector& m) {
  IPoint x(c.a.dim(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += m[i] * c.pts[i][k];
  return x;
}

void check_circuits(const Context& c, CheckResult& r) {
  for (const auto& u : circuits(c.a)) {
    ++r.cases;
    BigInt top = 0;
    for (const auto& x : u) top = std::max(top, BigInt(abs(x)));
    if (top > c.vol.vol_dag_max) fail(r, "circuit " + render(u) + " exceeds Vol†max");
    if (!in_kernel(c.a, u)) fail(r, "circuit " + render(u) + " is not in Z(A)");
  }
}

void check_conformal(const Context& c, CheckResult& r) {
  const auto basis = kernel_lattice(c.a);
  const auto list = circuits(c.a);
  std::vector<KernelVector> samples(basis.begin(), basis.end());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      for (int s : {1, -1}) {
        KernelVector v(c.a.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = basis[i][k] + s * basis[j][k];
        samples.push_back(std::move(v));
      }
  for (const auto& v : samples) {
    ++r.cases;
    const auto terms = conformal_decompose(c.a, v, list);
    const auto support = static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; }));
    if (terms.size() > support) fail(r, "too many terms for " + render(v));
    RationalVector sum(v.size(), Rational(0));
    for (const auto& t : terms) {
      if (t.lambda <= 0) fail(r, "nonpositive coefficient for " + render(v));
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (t.circuit[k] != 0 && sgn(t.circuit[k]) != sgn(v[k])) fail(r, "term not conformal for " + render(v));
        sum[k] += t.lambda * t.circuit[k];
      }
    }
    for (std::size_t k = 0; k < v.size(); ++k)
      if (sum[k] != v[k]) fail(r, "terms do not sum to " + render(v));
  }
}

void check_minimal_set(const Context& c, const MinimalUselessSet& m, CheckResult& r) {
  const BigInt cap = c.vol.vol_dag_max * static_cast<unsigned long>(c.a.size());
  for (const auto& e : m.elements) {
    ++r.cases;
    if (BigInt(static_cast<long>(*std::max_element(e.begin(), e.end()))) > cap)
      fail(r, "element " + render(e) + " exceeds l·Vol†max");
    const auto reps = enumerate_representations(c.a, combine(c, e), weight(e));
    const auto& least = reps.front();
    if (least == e) fail(r, "element " + render(e) + " is lex-minimal");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0 && least[i] != 0) fail(r, "element " + render(e) + " shares support with its lex-minimal twin");
      if (e[i] == 0) continue;
      ExponentVector below = e;
      --below[i];
      if (enumerate_representations(c.a, combine(c, below), weight(below)).front() != below)
        fail(r, "element " + render(e) + " is not minimal");
    }
  }
  if (m.status != ScanStatus::exact) {
    r.complete = false;
    r.detail = "scan truncated at weight " + std::to_string(m.scanned_weight);
  }
}

void check_counting(const Context& c, const MinimalUselessSet& m, const KhovanskiiBounds& b, CheckResult& r,
                    std::uint64_t max_cells) {
  if (m.status != ScanStatus::exact || m.elements.size() > kMaxSubsetTerms) {
    r.complete = false;
    r.detail = "minimal set not available for the formula";
    return;
  }
  const std::int64_t want = to_i64(b.improved) + 5;
  const std::int64_t reach = std::min(want, SumsetGrid::max_feasible_n(c.a, max_cells));
  if (reach < want) {
    r.complete = false;
    r.detail = "grid reaches N = " + std::to_string(reach) + " only";
  }
  const auto table = sumset_iterate(c.a, reach, false, max_cells);
  for (const auto& row : table.rows) {
    ++r.cases;
    if (nr_count(c.a, m, row.n) != BigInt(static_cast<unsigned long>(row.cardinality)))
      fail(r, "counting formula differs from |hA| at h = " + std::to_string(row.n));
  }
}

void check_structure_inclusion(const Context& c, std::int64_t max_n, std::uint64_t max_cells, CheckResult& r) {
  StructureEquation eq(c.a);
  const std::int64_t reach = std::min(max_n, SumsetGrid::max_feasible_n(c.a, max_cells));
  if (reach < max_n) {
    r.complete = false;
    r.detail = "grid reaches N = " + std::to_string(reach) + " only";
  }
  SumsetGrid grid(c.a, reach, max_cells);
  for (std::int64_t n = 1; n <= reach; ++n) {
    grid.advance();
    ++r.cases;
    const auto rep = eq.compare(n, grid.points());
    if (!rep.extra.empty()) fail(r, "NA has points outside the right-hand side at N = " + std::to_string(n));
  }
}

// Calls f on every subset of `items` with 1..k elements while f returns true.
void for_small_subsets(const std::vector<std::size_t>& items, std::size_t k,
                       const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) {
    if (!cur.empty() && !f(cur)) return false;
    if (cur.size() == k) return true;
    for (std::size_t i = start; i < items.size(); ++i) {
      cur.push_back(items[i]);
      const bool go = rec(i + 1);
      cur.pop_back();
      if (!go) return false;
    }
    return true;
  };
  rec(0);
}

void check_reductions(const Context& c, CheckResult& r) {
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < c.a.size(); ++i)
    if (i != c.origin) nonzero.push_back(i);
  std::size_t seen = 0;
  for_small_subsets(nonzero, c.a.dim(), [&](const std::vector<std::size_t>& s) {
    if (++seen > kMaxSubsets) {
      r.complete = false;
      return false;
    }
    std::vector<Point> cols;
    for (auto i : s) cols.push_back(c.a[i]);
    if (rank(IntMatrix::from_columns(cols, c.a.dim())) != s.size()) return true;
    for (const auto& f : c.hull.outer_facets)
      if (std::all_of(s.begin(), s.end(),
                      [&](std::size_t i) { return std::binary_search(f.incident.begin(), f.incident.end(), i); }))
        return true;
    ++r.cases;
    const auto red = find_reduction(c.a, s);
    IPoint lhs(c.a.dim(), 0), rhs(c.a.dim(), 0);
    for (std::size_t i = 0; i < c.a.size(); ++i)
      for (std::size_t k = 0; k < c.a.dim(); ++k) {
        lhs[k] += red.lambda[i] * c.pts[i][k];
        rhs[k] += red.rho[i] * c.pts[i][k];
      }
    if (lhs != rhs) fail(r, "reduction equation fails for S = " + render(std::vector<std::int64_t>(s.begin(), s.end())));
    if (weight(red.lambda) <= weight(red.rho)) fail(r, "reduction does not drop the weight");
    for (std::size_t i = 0; i < c.a.size(); ++i) {
      if (BigInt(static_cast<long>(std::max(red.lambda[i], red.rho[i]))) > c.vol.vol_dag_max)
        fail(r, "reduction entry exceeds Vol†max");
      if (red.lambda[i] != 0 && std::find(s.begin(), s.end(), i) == s.end()) fail(r, "lambda leaves S");
    }
    if (red.rho[c.origin] != 0) fail(r, "rho uses the origin");
    return true;
  });
}

void check_regular(const Context& c, CheckResult& r) {
  const BigInt vdag = c.vol.vol_dag_max;
  SumsetGrid grid(c.a, 3);
  std::vector<IPoint> targets;
  for (int n = 1; n <= 3; ++n) {
    grid.advance();
    for (auto& p : grid.points()) targets.push_back(std::move(p));
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.size() > kMaxRegularPoints) {
    targets.resize(kMaxRegularPoints);
    r.complete = false;
    r.detail = "first " + std::to_string(kMaxRegularPoints) + " points of 3A only";
  }
  for (const auto& v : targets) {
    ++r.cases;
    const auto dec = regular_decompose(c.a, v);
    const auto& facet = c.hull.outer_facets.at(dec.facet);
    IPoint sum(c.a.dim(), 0);
    for (std::size_t i = 0; i < c.a.size(); ++i) {
      const bool on_facet = std::binary_search(facet.incident.begin(), facet.incident.end(), i);
      if (dec.w_rep[i] != 0 && !on_facet) fail(r, "w leaves the facet");
      if (dec.u_rep[i] != 0 && (on_facet || i == c.origin)) fail(r, "u touches B ∪ {0}");
      if (BigInt(static_cast<long>(dec.u_rep[i])) > vdag - 1) fail(r, "u coefficient above Vol†max - 1");
      for (std::size_t k = 0; k < c.a.dim(); ++k) sum[k] += (dec.u_rep[i] + dec.w_rep[i]) * c.pts[i][k];
    }
    if (sum != v) fail(r, "u + w does not reproduce the point");
  }
}

void check_negative_coefficients(const Context& c, CheckResult& r) {
  const Rational k = kappa(c.a);
  for (const auto& f : c.hull.outer_facets)
    for (const auto& p : c.a.points()) {
      ++r.cases;
      if (f.evaluate(p) < 1 - k) fail(r, "beta(a) < 1 - kappa");
    }
}

void check_triangulation(const Context& c, CheckResult& r) {
  const auto t = triangulate_from_origin(c.a);
  const BigInt fact = factorial(static_cast<unsigned>(c.a.dim()));
  Rational total = 0;
  for (const auto& s : t.simplices) {
    ++r.cases;
    total += fraction(abs(determinant(IntMatrix::from_columns(s, c.a.dim()))), fact);
    for (const auto& v : s)
      if (std::find(c.hull.extremal.begin(), c.hull.extremal.end(), v) == c.hull.extremal.end())
        fail(r, "simplex vertex is not a vertex of H(A)");
  }
  const auto ehrhart = ehrhart_polynomial(c.a);
  if (total != c.vol.vol) fail(r, "simplex volumes do not add up to Vol");
  if (ehrhart.coefficients().back() != total) fail(r, "simplex volumes disagree with the lattice-count leading term");
}

void check_extremal(const Context& c, CheckResult& r) {
  BoxRegion box{IPoint(c.a.dim()), IPoint(c.a.dim())};
  for (std::size_t k = 0; k < c.a.dim(); ++k) {
    bool pos = true, neg = true;
    for (const auto& p : c.pts) {
      pos = pos && p[k] >= 0;
      neg = neg && p[k] <= 0;
    }
    box.lo[k] = pos ? 0 : neg ? -12 : -6;
    box.hi[k] = box.lo[k] + 12;
  }
  const auto rep = verify_extremal_decomposition(c.a, box);
  r.cases = rep.points_checked;
  if (!rep.holds) fail(r, std::to_string(rep.counterexamples.size()) + " counterexamples in the box");
}

void check_geometry(const Context& c, CheckResult& r) {
  const std::size_t d = c.a.dim();
  const Rational k = kappa(c.a);
  r.cases = 4;
  if (k != kappa_from_normals(c.a)) fail(r, "kappa routes disagree");
  if (k > fraction(c.vol.vol_dag_max, c.vol.vol_dag_min)) fail(r, "kappa > Vol†max / Vol†min");
  if (Rational(c.vol.vol_dag_max) > c.vol.vol * factorial(static_cast<unsigned>(d))) fail(r, "Vol†max > d! Vol");
  const BigInt lhs = c.vol.vol_dag_max * c.vol.vol_dag_max;
  const BigInt rhs = pow(BigInt(static_cast<unsigned long>(d)), d) * pow(c.vol.width, 2 * d);
  if (lhs > rhs) fail(r, "Vol†max > d^(d/2) width^d");
}

}  // namespace

std::vector<CheckResult> verify_all(const PointConfig& a, const VerifyOptions& options) {
  require_normalized(a);
  Context c{a, a.to_ipoints(), convex_hull(a), volumes(a), *a.origin_index()};
  std::vector<CheckResult> out;
  out.push_back(guarded("circuit_height", [&](CheckResult& r) { check_circuits(c, r); }));
  out.push_back(guarded("conformal_decomposition", [&](CheckResult& r) { check_conformal(c, r); }));
  std::optional<MinimalUselessSet> m;
  out.push_back(guarded("minimal_set", [&](CheckResult& r) {
    m = minimal_useless(a, options.scan);
    check_minimal_set(c, *m, r);
  }));
  out.push_back(guarded("counting_formula", [&](CheckResult& r) {
    if (!m) throw ResourceError("minimal set unavailable");
    check_counting(c, *m, khovanskii_bounds(a, &*m), r, options.structure.max_cells);
  }));
  out.push_back(guarded("khovanskii_threshold_bound", [&](CheckResult& r) {
    const auto res = khovanskii_threshold_exact(a, Route::automatic, options.scan, options.structure.max_cells);
    r.cases = 1;
    if (BigInt(static_cast<long>(res.threshold)) > khovanskii_bounds(a).improved) fail(r, "N_Kh above the bound");
    if (res.status != ThresholdStatus::exact) {
      r.complete = false;
      r.detail = "window ended before the bound";
    }
  }));
  out.push_back(guarded("structure_inclusion",
                        [&](CheckResult& r) { check_structure_inclusion(c, options.max_n, options.structure.max_cells, r); }));
  out.push_back(guarded("structure_threshold_window", [&](CheckResult& r) {
    const auto res = structure_threshold_empirical(a, options.structure);
    r.cases = static_cast<std::uint64_t>(res.window_end);
    if (res.extra_points != 0) fail(r, "points outside the right-hand side");
    for (std::int64_t n = res.threshold; n <= res.window_end; ++n)
      if (!res.holds[static_cast<std::size_t>(n) - 1]) fail(r, "window not monotone");
    if (res.status != StructureStatus::exact) {
      r.complete = false;
      r.detail = "window ended at N = " + std::to_string(res.window_end) + " before the bound " + res.bound.get_str();
    }
  }));
  out.push_back(guarded("reduction_step", [&](CheckResult& r) { check_reductions(c, r); }));
  out.push_back(guarded("regular_representation", [&](CheckResult& r) { check_regular(c, r); }));
  out.push_back(guarded("negative_coefficients", [&](CheckResult& r) { check_negative_coefficients(c, r); }));
  out.push_back(guarded("triangulation_volume", [&](CheckResult& r) { check_triangulation(c, r); }));
  out.push_back(guarded("extremal_decomposition", [&](CheckResult& r) { check_extremal(c, r); }));
  out.push_back(guarded("geometry_identities", [&](CheckResult& r) { check_geometry(c, r); }));
  return out;
}

}  // namespace sumset::cli

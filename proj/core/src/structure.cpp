#include "sumset/structure.hpp"

#include <algorithm>

#include "sumset/errors.hpp"
#include "sumset/khovanskii.hpp"

namespace sumset {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(p);
}

}  // namespace

void require_normalized(const PointConfig& a) {
  const auto origin = a.origin_index();
  if (!origin) throw PreconditionError("A is not normalized: it does not contain the origin");
  if (a.dim() == 0) throw DimensionError("A is zero-dimensional");
  const Polytope p = convex_hull(a);
  if (!std::binary_search(p.extremal_index.begin(), p.extremal_index.end(), *origin))
    throw PreconditionError("A is not normalized: the origin is not a vertex of H(A)");
  const auto lb = lattice_basis(a.points(), a.dim());
  if (!lb.index || *lb.index != 1) throw PreconditionError("A is not normalized: A does not generate Z^d");
}

StructureEquation::StructureEquation(const PointConfig& a) : a_(a) {
  require_normalized(a_);
  const Polytope p = convex_hull(a_);
  const auto pts = a_.to_ipoints();
  for (auto v : p.extremal_index) {
    vertices_.push_back(pts[v]);
    std::vector<Point> reflected;
    for (const auto& q : a_.points()) {
      Point r(a_.dim());
      for (std::size_t c = 0; c < a_.dim(); ++c) r[c] = a_[v][c] - q[c];
      reflected.push_back(std::move(r));
    }
    oracles_.push_back(std::make_unique<SemigroupOracle>(PointConfig(a_.dim(), std::move(reflected))));
  }
}

StructureEquation::~StructureEquation() = default;

bool StructureEquation::excluded(const IPoint& x, std::int64_t n) {
  IPoint y(x.size());
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    for (std::size_t c = 0; c < x.size(); ++c) y[c] = vertices_[k][c] * n - x[c];
    if (oracles_[k]->in_cone(y) && !oracles_[k]->contains(y)) return true;
  }
  return false;
}

std::vector<IPoint> StructureEquation::rhs(std::int64_t n) {
  std::vector<IPoint> out;
  for (auto& x : enumerate_dilate_points(a_, n))
    if (!excluded(x, n)) out.push_back(std::move(x));
  return out;
}

StructureReport StructureEquation::compare(std::int64_t n, const std::vector<IPoint>& sumset_points) {
  StructureReport r;
  r.n = n;
  const auto right = rhs(n);
  std::set_difference(right.begin(), right.end(), sumset_points.begin(), sumset_points.end(),
                      std::back_inserter(r.missing));
  std::set_difference(sumset_points.begin(), sumset_points.end(), right.begin(), right.end(),
                      std::back_inserter(r.extra));
  r.holds = r.missing.empty() && r.extra.empty();
  return r;
}

std::vector<IPoint> structure_rhs(const PointConfig& a, std::int64_t n) {
  if (n < 0) throw PreconditionError("structure_rhs: N must be nonnegative");
  StructureEquation eq(a);
  return eq.rhs(n);
}

StructureReport verify_structure_equation(const PointConfig& a, std::int64_t n) {
  if (n < 1) throw PreconditionError("verify_structure_equation: N must be positive");
  StructureEquation eq(a);
  SumsetGrid grid(a, n);
  for (std::int64_t k = 0; k < n; ++k) grid.advance();
  return eq.compare(n, grid.points());
}

StructureBounds structure_bounds(const PointConfig& a) {
  const std::size_t d = a.dim();
  const Volumes v = volumes(a);
  unsigned long vertices = 0;
  for (std::size_t i = 0; i < a.size(); ++i) vertices += is_extremal(a, i);
  const Rational k = kappa(a);
  const BigInt fact = factorial(static_cast<unsigned>(d));
  const BigInt ex = vertices;
  const BigInt l = static_cast<unsigned long>(a.size());
  const BigInt dd = static_cast<unsigned long>(d);
  StructureBounds b;
  b.bound_a = (dd + 1) * k * (fact * v.vol + Rational(ex - dd - 1) * v.vol_dag_max);
  b.bound_b = (dd + 1) * k * Rational((l - dd - 1) * v.vol_dag_max);
  b.clean = (dd + 1) * fact * fact * Rational(ex - dd) * v.vol * v.vol;
  b.bound_a.canonicalize();
  b.bound_b.canonicalize();
  b.clean.canonicalize();
  const unsigned long d6 = static_cast<unsigned long>(d * d * d * d * d * d);
  b.gsw = pow(BigInt(dd * l * v.width), 13 * d6);
  return b;
}

StructureThreshold structure_threshold_empirical(const PointConfig& a, const StructureCaps& caps) {
  StructureEquation eq(a);
  const StructureBounds bounds = structure_bounds(a);
  StructureThreshold res;
  res.bound = std::min(ceil(bounds.bound_a), ceil(bounds.bound_b));
  if (res.bound < 1) res.bound = 1;

  const RationalPolynomial lattice_count = ehrhart_polynomial(a);
  const std::int64_t feasible = SumsetGrid::max_feasible_n(a, caps.max_cells);
  std::int64_t end = 0;
  std::uint64_t cost = 0;
  while (true) {
    const std::int64_t n = end + 1;
    if (BigInt(static_cast<long>(n)) > res.bound) break;
    if (caps.max_n && n > *caps.max_n) break;
    if (n > feasible) break;
    const Rational pts = lattice_count(Rational(static_cast<long>(n)));
    const std::uint64_t step = saturating_mul(pts.get_num().get_ui(), eq.vertex_count());
    if (!pts.get_num().fits_ulong_p() || cost + step > caps.lattice_budget || cost + step < cost) break;
    cost += step;
    end = n;
  }
  if (BigInt(static_cast<long>(end)) < res.bound) res.status = StructureStatus::empirical;
  if (end < 1) throw ResourceError("structure threshold: budget does not cover N = 1", 0);
  res.window_end = end;

  SumsetGrid grid(a, end, caps.max_cells);
  for (std::int64_t n = 1; n <= end; ++n) {
    grid.advance();
    const auto report = eq.compare(n, grid.points());
    res.holds.push_back(report.holds);
    res.extra_points += report.extra.size();
  }
  res.lattice_tests = cost;
  if (!res.holds.back()) {
    if (res.status == StructureStatus::exact)
      throw InternalError("structure equation fails at the proven bound N = " + std::to_string(end));
    res.threshold = end + 1;
    return res;
  }
  std::int64_t n = end;
  while (n > 1 && res.holds[static_cast<std::size_t>(n) - 2]) --n;
  res.threshold = n;
  return res;
}

ExtremalDecompositionReport verify_extremal_decomposition(const PointConfig& a, const RegionSpec& region) {
  const std::size_t d = a.dim();
  const Polytope p = convex_hull(a);
  const auto origin = a.origin_index();
  if (!origin || !std::binary_search(p.extremal_index.begin(), p.extremal_index.end(), *origin))
    throw PreconditionError("verify_extremal_decomposition: the origin must be a vertex of H(A)");
  ExtremalDecompositionReport rep;
  const Rational scaled = volumes(a).vol * factorial(static_cast<unsigned>(d));
  if (scaled.get_den() != 1) throw InternalError("d! Vol(H(A)) is not an integer");
  rep.scale = scaled.get_num();

  SumsetGrid grid(a, to_i64(rep.scale));
  for (BigInt k = 0; k < rep.scale; ++k) grid.advance();
  const auto s = grid.points();

  SemigroupOracle whole(a);
  SemigroupOracle vertices(PointConfig(d, p.extremal));
  IPoint y(d);
  for (const auto& x : region_points(a, region)) {
    ++rep.points_checked;
    const bool lhs = whole.contains(x);
    bool rhs = false;
    for (const auto& t : s) {
      for (std::size_t c = 0; c < d; ++c) y[c] = x[c] - t[c];
      if (vertices.contains(y)) {
        rhs = true;
        break;
      }
    }
    if (lhs != rhs) {
      rep.holds = false;
      rep.counterexamples.push_back({x, lhs, rhs});
    }
  }
  return rep;
}

}  // namespace sumset

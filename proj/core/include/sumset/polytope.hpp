#pragma once

#include <cstdint>
#include <vector>

#include "sumset/lattice.hpp"

namespace sumset {

enum class FacetKind { outer, inner };

/// A facet of H(A). Outer facets miss the origin and carry beta with
/// beta <= 1 on H(A); inner facets contain the origin and carry gamma with
/// gamma >= 0 on H(A).
struct FacetFunctional {
  FacetKind kind;
  RationalVector coefficients;       // beta (outer) or gamma (inner)
  std::vector<std::size_t> incident;  // indices of A on the facet, ascending
  Point normal;                      // primitive integer normal ...
  BigInt offset;                     // ... with normal . x <= offset on H(A)

  Rational evaluate(const Point& x) const;
};

struct Polytope {
  std::size_t dim = 0;
  std::vector<FacetFunctional> outer_facets;
  std::vector<FacetFunctional> inner_facets;
  std::vector<std::size_t> extremal_index;  // ascending indices into A
  std::vector<Point> extremal;

  std::vector<const FacetFunctional*> all_facets() const;
};

struct FacetId {
  FacetKind kind;
  std::size_t index;
};

/// Simplices B^(j) of a triangulation coned from the origin.
struct Triangulation {
  std::vector<std::vector<Point>> simplices;
};

struct Volumes {
  Rational vol;
  BigInt vol_dag_max;
  BigInt vol_dag_min;
  BigInt width;
};

/// Exact facet description. Requires span(A) = R^d and 0 in H(A).
Polytope convex_hull(const PointConfig& a);

/// True when A[index] is a vertex of H(A) (requires a full-dimensional A).
bool is_extremal(const PointConfig& a, std::size_t index);

Volumes volumes(const PointConfig& a);

/// Largest ratio, over facets F, of the farthest to nearest height of a
/// point of A \ F above F. Heights are the determinants
/// det(b1 - a, ..., bd - a) for affinely independent b's on F.
Rational kappa(const PointConfig& a);

/// Same quantity from the primitive facet normals (offset - normal . a);
/// an independent route used for cross-checking.
Rational kappa_from_normals(const PointConfig& a);

const FacetFunctional& facet_functional(const Polytope& p, FacetId id);

/// Pulling triangulation from the origin over the outer facets, recursing
/// into each facet with its lexicographically least vertex as apex.
Triangulation triangulate_from_origin(const PointConfig& a);

/// |N H(A) ∩ Z^d| by exact half-space tests over the bounding box.
BigInt count_dilate_points(const PointConfig& a, std::int64_t n);

/// Lattice points of N H(A), sorted lexicographically.
std::vector<IPoint> enumerate_dilate_points(const PointConfig& a, std::int64_t n);

/// Integer half-space form of H(A) used by the hot loops:
/// row k of `normals` dotted with x is at most offsets[k] * N on N H(A).
struct HalfSpaces {
  std::vector<IPoint> normals;
  std::vector<std::int64_t> offsets;
  IPoint lo, hi;  // bounding box of H(A)

  bool contains_dilate(const IPoint& x, std::int64_t n) const;
};

HalfSpaces half_spaces(const PointConfig& a, const Polytope& p);

}  // namespace sumset

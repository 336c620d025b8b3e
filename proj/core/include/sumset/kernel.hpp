#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sumset/lattice.hpp"

namespace sumset {

/// Nonnegative coefficients indexed like A.
using ExponentVector = std::vector<std::int64_t>;
/// Integer vector indexed like A; elements of Z(A) have weight 0.
using KernelVector = std::vector<BigInt>;

BigInt weight(const KernelVector& v);
std::int64_t weight(const ExponentVector& v);

/// Columns (a_i, 1) as a (d+1) x l matrix.
IntMatrix augmented_matrix(const PointConfig& a);

bool in_kernel(const PointConfig& a, const KernelVector& v);

/// Divide by the content and make the first nonzero entry positive.
KernelVector normalize_circuit(KernelVector v);

/// Integer basis of Z(A) = {z : wt(z) = 0, sum z_i a_i = 0}.
std::vector<KernelVector> kernel_lattice(const PointConfig& a);

/// Z†(A) up to sign: Cramer null vectors of every column subset of the
/// augmented matrix with a one-dimensional kernel, normalized and
/// deduplicated, in order of first appearance.
std::vector<KernelVector> circuits(const PointConfig& a);

struct ConformalTerm {
  Rational lambda;       // > 0
  KernelVector circuit;  // oriented so its sign pattern nests inside v's
};

/// v = sum lambda_j u_j with supp(u_j^±) ⊆ supp(v^±). Greedy: take the
/// lexicographically least normalized circuit that is conformal (in some
/// orientation), subtract the largest multiple keeping conformality, repeat.
std::vector<ConformalTerm> conformal_decompose(const PointConfig& a, const KernelVector& v);
std::vector<ConformalTerm> conformal_decompose(const PointConfig& a, const KernelVector& v,
                                               std::span<const KernelVector> circuit_list);

/// Lexicographically least normalized circuit conformal to v (oriented), if any.
std::optional<KernelVector> conformal_circuit(std::span<const KernelVector> circuit_list, const RationalVector& v);

struct Reduction {
  ExponentVector lambda;  // supported on S
  ExponentVector rho;     // supported on A \ {0}
};

/// Relation sum_S lambda_s s = sum rho_a a with wt(lambda) > wt(rho) and
/// all entries at most Vol†max. A must contain the origin as a vertex and
/// span R^d; S (indices into A) linearly independent and not inside an
/// outer facet.
Reduction find_reduction(const PointConfig& a, std::span<const std::size_t> s);

struct RegularDecomposition {
  ExponentVector u_rep;  // off B ∪ {0}, entries <= Vol†max - 1
  ExponentVector w_rep;  // on B = A ∩ F
  std::size_t facet;     // index into convex_hull(A).outer_facets
};

/// v = u + w as in the regular representation: w supported on one outer
/// facet, u with small coefficients elsewhere. Same hypotheses on A as
/// find_reduction; throws PreconditionError when v is not in P(A).
RegularDecomposition regular_decompose(const PointConfig& a, const IPoint& v);

}  // namespace sumset

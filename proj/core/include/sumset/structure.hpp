#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sumset/polytope.hpp"
#include "sumset/sumset.hpp"

namespace sumset {

struct StructureReport {
  std::int64_t n = 0;
  bool holds = false;
  std::vector<IPoint> missing;  // RHS \ NA
  std::vector<IPoint> extra;    // NA \ RHS; nonempty only if something is broken
};

/// Right-hand side of the structure equation for a normalized A:
/// lattice points of N H(A) minus aN - E(a - A) for every vertex a.
/// Holds one semigroup oracle per vertex so repeated N share their caches.
class StructureEquation {
 public:
  explicit StructureEquation(const PointConfig& a);
  ~StructureEquation();

  bool excluded(const IPoint& x, std::int64_t n);
  std::vector<IPoint> rhs(std::int64_t n);
  /// Compares against NA given as a lexicographically sorted point list.
  StructureReport compare(std::int64_t n, const std::vector<IPoint>& sumset_points);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }

 private:
  PointConfig a_;
  std::vector<IPoint> vertices_;
  std::vector<std::unique_ptr<SemigroupOracle>> oracles_;  // for a - A, a a vertex
};

/// Throws PreconditionError unless 0 is a vertex of H(A), A spans R^d and
/// A generates Z^d.
void require_normalized(const PointConfig& a);

std::vector<IPoint> structure_rhs(const PointConfig& a, std::int64_t n);
StructureReport verify_structure_equation(const PointConfig& a, std::int64_t n);

struct StructureBounds {
  Rational bound_a;  // (d+1) kappa (d! Vol + (|ex| - d - 1) Vol†max)
  Rational bound_b;  // (d+1) kappa (|A| - d - 1) Vol†max
  Rational clean;    // (d+1) (d!)^2 (|ex| - d) Vol^2
  BigInt gsw;        // (d |A| width)^(13 d^6)
};

/// The four bounds evaluated on A exactly as given (A must span R^d).
StructureBounds structure_bounds(const PointConfig& a);

enum class StructureStatus { exact, empirical };

inline constexpr std::uint64_t kDefaultLatticeBudget = 10'000'000;

struct StructureCaps {
  std::uint64_t lattice_budget = kDefaultLatticeBudget;  // sum over N of |NH ∩ Z^d| * |ex|
  std::optional<std::int64_t> max_n;
  std::uint64_t max_cells = kDefaultMaxCells;
};

struct StructureThreshold {
  std::int64_t threshold = 1;
  StructureStatus status = StructureStatus::exact;
  std::int64_t window_end = 0;  // every N in [1, window_end] was verified
  BigInt bound;                 // ceil(min(bound_a, bound_b)), at least 1
  std::vector<bool> holds;      // holds[N-1]
  std::uint64_t extra_points = 0;
  std::uint64_t lattice_tests = 0;
};

/// Least N0 with equality for every N in [N0, B], B the smaller proven bound.
/// Falls back to an empirical window when B is beyond the budget.
StructureThreshold structure_threshold_empirical(const PointConfig& a, const StructureCaps& caps = {});

struct DecompositionWitness {
  IPoint x;
  bool in_semigroup;      // x in P(A)
  bool in_decomposition;  // x in S + P(ex H(A))
};

struct ExtremalDecompositionReport {
  bool holds = true;
  BigInt scale;  // d! Vol(H(A))
  std::uint64_t points_checked = 0;
  std::vector<DecompositionWitness> counterexamples;
};

/// Compares P(A) with (d! Vol) A + P(ex H(A)) on the region.
ExtremalDecompositionReport verify_extremal_decomposition(const PointConfig& a, const RegionSpec& region);

}  // namespace sumset

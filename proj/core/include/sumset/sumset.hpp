#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "sumset/lattice.hpp"

namespace sumset {

/// Default limit on grid cells (bits) held by a SumsetGrid.
inline constexpr std::uint64_t kDefaultMaxCells = std::uint64_t{1} << 31;

/// Iterated sumsets NA held as a bitset over the bounding box of n_max·H(A).
///
/// The box is fixed for the whole run, so (N-1)A + a becomes a left shift of
/// the bitset by a constant offset per a. The last coordinate varies fastest,
/// hence set bits come out in lexicographic order.
class SumsetGrid {
 public:
  SumsetGrid(const PointConfig& a, std::int64_t n_max, std::uint64_t max_cells = kDefaultMaxCells);

  /// Largest N whose box fits in `max_cells` (0 if even A does not fit).
  static std::int64_t max_feasible_n(const PointConfig& a, std::uint64_t max_cells);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t n_max() const noexcept { return n_max_; }
  std::size_t dim() const noexcept { return lo_.size(); }

  /// Moves from NA to (N+1)A.
  void advance();
  std::uint64_t cardinality() const;
  bool contains(const IPoint& x) const;
  std::vector<IPoint> points() const;

 private:
  std::size_t active_words(std::int64_t n) const;
  std::size_t linear_index(const IPoint& shifted) const;

  std::int64_t n_ = 0;
  std::int64_t n_max_;
  IPoint lo_;       // coordinatewise minimum of A
  IPoint width_;    // max - min per coordinate
  std::vector<std::uint64_t> stride_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> scratch_;
};

struct GrowthRecord {
  std::int64_t n;
  std::uint64_t cardinality;
  std::optional<std::vector<IPoint>> points;
};

struct GrowthTable {
  std::vector<GrowthRecord> rows;
};

/// |NA| for N = 1..n_max. Throws ResourceError (reached = largest feasible N)
/// if the grid for n_max exceeds max_cells.
GrowthTable sumset_iterate(const PointConfig& a, std::int64_t n_max, bool retain_points = false,
                           std::uint64_t max_cells = kDefaultMaxCells);

/// Membership in the semigroup P(B) generated by B, for B containing the
/// origin as a vertex of H(B) (so the cone is pointed).
///
/// Decided by memoized descent p -> p - b. The ranking functional (sum of the
/// inner facet functionals of H(B)) is positive on every generator and
/// nonnegative on the cone, so descents terminate. Queries are serialized by
/// an internal mutex; the cache is shared by all queries.
class SemigroupOracle {
 public:
  explicit SemigroupOracle(const PointConfig& b);

  bool contains(const IPoint& p);
  /// Coefficients indexed like B (origin coefficient 0), or nullopt.
  std::optional<std::vector<std::int64_t>> certificate(const IPoint& p);
  /// A representation of least total weight; among equal weights the first
  /// generator (in B order) is peeled off at every step.
  std::optional<std::vector<std::int64_t>> min_weight_representation(const IPoint& p);
  /// Membership in the real cone generated by B.
  bool in_cone(const IPoint& p) const;

  std::size_t cache_size() const;

 private:
  std::optional<IPoint> local(const IPoint& p) const;
  bool in_local_cone(const IPoint& y) const;
  bool solve(const IPoint& y);
  std::int64_t solve_min(const IPoint& y);

  std::size_t dim_;
  bool identity_ = false;  // B already generates Z^d: local == original coordinates
  Normalization normalization_;
  std::vector<std::size_t> generator_index_;  // index in B of each generator
  std::vector<IPoint> generators_;            // local coordinates
  std::vector<IPoint> cone_;                  // gamma_j . y >= 0
  mutable std::mutex mutex_;
  std::unordered_map<IPoint, std::int32_t, IPointHash> member_;      // -1 no, -2 origin, k via generator k
  std::unordered_map<IPoint, std::pair<std::int64_t, std::int32_t>, IPointHash> min_;  // weight (-1 none), generator
};

struct Membership {
  bool member;
  std::vector<std::int64_t> coefficients;  // indexed like B; empty when not a member
};

Membership semigroup_contains(const PointConfig& b, const IPoint& p);

struct BoxRegion {
  IPoint lo, hi;
};
struct DilateRegion {
  std::int64_t n;
};
using RegionSpec = std::variant<BoxRegion, DilateRegion>;

/// Lattice points of a region, lexicographically sorted.
std::vector<IPoint> region_points(const PointConfig& a, const RegionSpec& region);

/// Lattice points of the region lying in C_A but not in P(A). A normalized.
std::vector<IPoint> exceptional_in_region(const PointConfig& a, const RegionSpec& region);

}  // namespace sumset

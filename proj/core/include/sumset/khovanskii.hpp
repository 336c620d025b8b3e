#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sumset/kernel.hpp"
#include "sumset/polynomial.hpp"
#include "sumset/sumset.hpp"

namespace sumset {

/// rep_h(x): all m >= 0 with wt(m) = h and sum m_i a_i = x, sorted
/// lexicographically (the first one is m_h(x)).
std::vector<ExponentVector> enumerate_representations(const PointConfig& a, const IPoint& x, std::int64_t h);

enum class ScanStatus { exact, truncated };

struct ScanCaps {
  std::optional<std::int64_t> max_weight;      // highest level h scanned
  std::optional<std::uint64_t> max_candidates;  // total candidates examined
  bool count_certificate = true;                // allow the early stop described below
};

inline constexpr std::uint64_t kDefaultMaxCandidates = 50'000'000;

struct MinimalUselessSet {
  std::vector<ExponentVector> elements;  // sorted by weight, then lexicographically
  ScanStatus status = ScanStatus::exact;
  std::int64_t scanned_weight = 0;  // every level h <= scanned_weight was completed
  std::int64_t weight_limit = 0;    // l^2 Vol†max, the level that makes the scan exact
  bool certified_by_count = false;  // scan stopped early because the counts matched |hA| up to weight_limit
};

/// Mann–Dickson minimal elements M of the set U of non-lex-minimal
/// representations. Level h+1 is built from the lex-minimal representations
/// of level h: every lex-minimal m at level h+1 has m - e_i lex-minimal for
/// all i in supp(m). A must span R^d.
///
/// The scan stops before l^2 Vol†max once the counting formula over the
/// elements found so far reproduces |hA| for every h up to l^2 Vol†max: any
/// missing element would make the two differ at its own weight.
MinimalUselessSet minimal_useless(const PointConfig& a, const ScanCaps& caps = {});

inline constexpr std::size_t kMaxSubsetTerms = 20;

/// Inclusion–exclusion terms of the counting formula grouped by weight:
/// |hA| = sum_w coeff_w * binom(h - w + l - 1, l - 1).
std::vector<std::pair<std::int64_t, BigInt>> nr_terms(const MinimalUselessSet& m);

BigInt nr_count(const PointConfig& a, const MinimalUselessSet& m, std::int64_t h);

enum class Route { formula, interpolation, automatic };

struct KhovanskiiBounds {
  BigInt improved;                     // l^2 Vol†max - l + 1
  BigInt gsw;                          // (2 l width)^((d+4) l)
  std::optional<BigInt> intermediate;  // wt(m_M) - l + 1, when M is exact
};

/// Bounds evaluated on A exactly as given.
KhovanskiiBounds khovanskii_bounds(const PointConfig& a, const MinimalUselessSet* m = nullptr);

/// The polynomial P_A. The formula route needs an exact M (|M| <= 20); the
/// interpolation route fits |NA| on N = B..B+d and checks N = B+d+1.
RationalPolynomial khovanskii_polynomial(const PointConfig& a, Route route = Route::automatic,
                                         const ScanCaps& caps = {}, std::uint64_t max_cells = kDefaultMaxCells);

enum class ThresholdStatus { exact, empirical };

struct KhovanskiiResult {
  std::int64_t threshold = 1;
  ThresholdStatus status = ThresholdStatus::exact;
  std::int64_t window_end = 0;  // largest N compared against P_A
  RationalPolynomial polynomial;
  Route route_used = Route::interpolation;
  std::vector<std::uint64_t> growth;  // |NA| for N = 1..window_end
  std::optional<MinimalUselessSet> minimal;
};

/// Least N0 >= 1 with |NA| = P_A(N) for all N in [N0, B], B the smaller of
/// the improved bound and the intermediate bound (when M is exact). When the
/// sumset grid cannot reach B the window stops early and the status is
/// empirical.
KhovanskiiResult khovanskii_threshold_exact(const PointConfig& a, Route route = Route::automatic,
                                            const ScanCaps& caps = {}, std::uint64_t max_cells = kDefaultMaxCells);

/// R_A(N) = |N H(A) ∩ Z^d|, interpolated from N = 0..d and checked at d+1.
RationalPolynomial ehrhart_polynomial(const PointConfig& a);

}  // namespace sumset

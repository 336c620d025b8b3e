#include "sumset/khovanskii.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sumset/errors.hpp"
#include "sumset/polytope.hpp"

namespace sumset {

namespace {

struct RepSearch {
  const std::vector<IPoint>& pts;
  std::vector<IPoint> suffix_lo, suffix_hi;  // coordinate bounds of pts[i..]
  std::vector<ExponentVector> out;
  ExponentVector cur;

  // Can y be written with exactly r points from pts[i..]?
  bool feasible(std::size_t i, const IPoint& y, std::int64_t r) const {
    for (std::size_t c = 0; c < y.size(); ++c) {
      const __int128 lo = static_cast<__int128>(r) * suffix_lo[i][c];
      const __int128 hi = static_cast<__int128>(r) * suffix_hi[i][c];
      if (y[c] < lo || y[c] > hi) return false;
    }
    return true;
  }

  void run(std::size_t i, IPoint& y, std::int64_t r) {
    if (i + 1 == pts.size()) {
      for (std::size_t c = 0; c < y.size(); ++c)
        if (static_cast<__int128>(r) * pts[i][c] != y[c]) return;
      cur[i] = r;
      out.push_back(cur);
      cur[i] = 0;
      return;
    }
    for (std::int64_t k = 0; k <= r; ++k) {
      if (feasible(i + 1, y, r - k)) {
        cur[i] = k;
        run(i + 1, y, r - k);
      }
      for (std::size_t c = 0; c < y.size(); ++c) y[c] -= pts[i][c];
    }
    for (std::size_t c = 0; c < y.size(); ++c) y[c] += (r + 1) * pts[i][c];
    cur[i] = 0;
  }
};

bool fits(const RationalPolynomial& p, std::int64_t n, std::uint64_t value) {
  return p(Rational(static_cast<long>(n))) == Rational(static_cast<unsigned long>(value));
}

}  // namespace

std::vector<ExponentVector> enumerate_representations(const PointConfig& a, const IPoint& x, std::int64_t h) {
  if (h < 0) throw PreconditionError("enumerate_representations: h must be nonnegative");
  if (x.size() != a.dim()) throw DimensionError("enumerate_representations: point has wrong dimension");
  const auto pts = a.to_ipoints();
  RepSearch s{pts, {}, {}, {}, ExponentVector(pts.size(), 0)};
  s.suffix_lo.assign(pts.size() + 1, IPoint(a.dim(), 0));
  s.suffix_hi.assign(pts.size() + 1, IPoint(a.dim(), 0));
  for (std::size_t i = pts.size(); i-- > 0;) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      const bool last = i + 1 == pts.size();
      s.suffix_lo[i][c] = last ? pts[i][c] : std::min(pts[i][c], s.suffix_lo[i + 1][c]);
      s.suffix_hi[i][c] = last ? pts[i][c] : std::max(pts[i][c], s.suffix_hi[i + 1][c]);
    }
  }
  IPoint y = x;
  if (s.feasible(0, y, h)) s.run(0, y, h);
  return std::move(s.out);
}

namespace {

std::vector<std::pair<std::int64_t, BigInt>> subset_terms(const std::vector<ExponentVector>& elements, std::size_t l) {
  std::map<std::int64_t, BigInt> by_weight;
  // Depth-first over subsets, carrying the running coordinatewise maximum.
  auto rec = [&](auto&& self, std::size_t k, const ExponentVector& cur, int parity) -> void {
    if (k == elements.size()) {
      by_weight[weight(cur)] += parity;
      return;
    }
    self(self, k + 1, cur, parity);
    ExponentVector with = cur;
    for (std::size_t i = 0; i < l; ++i) with[i] = std::max(with[i], elements[k][i]);
    self(self, k + 1, with, -parity);
  };
  rec(rec, 0, ExponentVector(l, 0), 1);
  std::vector<std::pair<std::int64_t, BigInt>> out;
  for (auto& [w, c] : by_weight)
    if (c != 0) out.emplace_back(w, c);
  return out;
}

BigInt evaluate_terms(const std::vector<std::pair<std::int64_t, BigInt>>& terms, std::int64_t h, unsigned k) {
  BigInt total = 0;
  for (const auto& [w, c] : terms) total += c * binomial_or_zero(BigInt(static_cast<long>(h - w + k)), k);
  return total;
}

// For a partial M' of M, (formula with M')(h) - |hA| counts weight-h vectors
// of U(M) \ U(M'), so it first becomes nonzero at the weight of the lightest
// missing element. Returns that weight, or 0 when the counts agree through
// `limit` (every element of M has weight <= limit, so M' = M).
std::int64_t first_missing_weight(const std::vector<ExponentVector>& partial, std::size_t l, std::int64_t from,
                                  std::int64_t limit, const std::vector<std::uint64_t>& growth) {
  const auto terms = subset_terms(partial, l);
  const unsigned k = static_cast<unsigned>(l - 1);
  for (std::int64_t h = from; h <= limit; ++h)
    if (evaluate_terms(terms, h, k) != BigInt(static_cast<unsigned long>(growth[static_cast<std::size_t>(h) - 1])))
      return h;
  return 0;
}

// Lex-minimal representations of one level, sorted by point, stored flat.
class Level {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  Level(std::size_t d, std::size_t l) : d_(d), l_(l) {}

  std::size_t size() const noexcept { return pts_.size() / d_; }
  const std::int64_t* point(std::size_t k) const { return pts_.data() + k * d_; }
  const std::int64_t* rep(std::size_t k) const { return reps_.data() + k * l_; }
  void push(const std::int64_t* x, const std::int64_t* m) {
    pts_.insert(pts_.end(), x, x + d_);
    reps_.insert(reps_.end(), m, m + l_);
  }
  std::size_t find(const std::int64_t* y) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const auto* p = point(mid);
      if (std::lexicographical_compare(p, p + d_, y, y + d_)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo < size() && std::equal(y, y + d_, point(lo)) ? lo : npos;
  }
  // rep(k) == c - e_j
  bool same_rep_minus(std::size_t k, const ExponentVector& c, std::size_t j) const {
    const auto* m = rep(k);
    for (std::size_t i = 0; i < l_; ++i)
      if (m[i] != c[i] - (i == j ? 1 : 0)) return false;
    return true;
  }

 private:
  std::size_t d_, l_;
  std::vector<std::int64_t> pts_, reps_;
};

}  // namespace

MinimalUselessSet minimal_useless(const PointConfig& a, const ScanCaps& caps) {
  const auto pts = a.to_ipoints();
  const std::size_t l = pts.size();
  const BigInt vol_dag = volumes(a).vol_dag_max;
  MinimalUselessSet result;
  result.weight_limit = to_i64(BigInt(vol_dag * l * l));
  std::int64_t top = result.weight_limit;
  bool capped = false;
  if (caps.max_weight && *caps.max_weight < top) {
    top = *caps.max_weight;
    capped = true;
  }
  const std::uint64_t budget = caps.max_candidates.value_or(kDefaultMaxCandidates);
  std::uint64_t examined = 0;

  // |hA| up to the weight limit, for the counting certificate.
  std::vector<std::uint64_t> growth;
  if (caps.count_certificate) try {
    for (const auto& r : sumset_iterate(a, result.weight_limit).rows) growth.push_back(r.cardinality);
  } catch (const ResourceError&) {
    growth.clear();
  }
  std::set<std::pair<std::int64_t, ExponentVector>> found;
  auto partial = [&] {
    std::vector<ExponentVector> v;
    for (const auto& [w, m] : found) v.push_back(m);
    return v;
  };
  // Weight of the lightest element not yet found; 0 once certified; -1 when
  // the certificate is unavailable.
  std::int64_t missing = growth.empty() ? -1 : first_missing_weight({}, l, 1, result.weight_limit, growth);

  Level level(a.dim(), l);
  level.push(IPoint(a.dim(), 0).data(), ExponentVector(l, 0).data());

  bool exhausted = false;
  std::vector<std::size_t> pos(l);
  std::vector<IPoint> cand_pt(l, IPoint(a.dim()));
  std::vector<ExponentVector> cand_rep(l, ExponentVector(l));
  std::vector<std::size_t> group;
  IPoint probe(a.dim());
  for (std::int64_t h = 0; h < top && missing != 0; ++h) {
    if (examined + 2 * l * level.size() > budget) {
      exhausted = true;
      break;
    }
    examined += 2 * l * level.size();
    const std::size_t before = found.size();
    // (h+1)-level = union over i of (level + e_i), merged by point; each
    // shifted copy is already sorted.
    Level next(a.dim(), l);
    auto load = [&](std::size_t i) {
      if (pos[i] == level.size()) return;
      const auto* x = level.point(pos[i]);
      const auto* m = level.rep(pos[i]);
      for (std::size_t k = 0; k < a.dim(); ++k) cand_pt[i][k] = x[k] + pts[i][k];
      std::copy(m, m + l, cand_rep[i].begin());
      ++cand_rep[i][i];
    };
    for (std::size_t i = 0; i < l; ++i) {
      pos[i] = 0;
      load(i);
    }
    while (true) {
      group.clear();
      for (std::size_t i = 0; i < l; ++i) {
        if (pos[i] == level.size()) continue;
        if (group.empty() || cand_pt[i] < cand_pt[group.front()]) {
          group.assign(1, i);
        } else if (cand_pt[i] == cand_pt[group.front()]) {
          group.push_back(i);
        }
      }
      if (group.empty()) break;
      std::size_t win = group.front();
      for (auto i : group)
        if (cand_rep[i] < cand_rep[win]) win = i;
      const IPoint& y = cand_pt[win];
      next.push(y.data(), cand_rep[win].data());
      for (auto i : group) {
        const ExponentVector& c = cand_rep[i];
        if (c == cand_rep[win]) continue;  // lex-minimal, not useless
        bool minimal = true;
        for (std::size_t j = 0; j < l && minimal; ++j) {
          if (c[j] == 0 || j == i) continue;
          for (std::size_t k = 0; k < a.dim(); ++k) probe[k] = y[k] - pts[j][k];
          const std::size_t at = level.find(probe.data());
          minimal = at != Level::npos && level.same_rep_minus(at, c, j);
        }
        if (minimal) found.emplace(h + 1, c);
      }
      for (auto i : group) {
        ++pos[i];
        load(i);
      }
    }
    level = std::move(next);
    result.scanned_weight = h + 1;
    if (missing > 0) {
      if (found.size() != before) {
        missing = found.size() > kMaxSubsetTerms
                      ? -1
                      : first_missing_weight(partial(), l, h + 2, result.weight_limit, growth);
      } else if (missing == h + 1) {
        throw InternalError("minimal_useless: counting certificate predicted an element at weight " +
                            std::to_string(missing));
      }
    }
  }
  result.elements = partial();
  result.certified_by_count = missing == 0;
  const bool complete = missing == 0 || (!exhausted && !capped && result.scanned_weight == result.weight_limit);
  result.status = complete ? ScanStatus::exact : ScanStatus::truncated;
  return result;
}

std::vector<std::pair<std::int64_t, BigInt>> nr_terms(const MinimalUselessSet& m) {
  if (m.status != ScanStatus::exact)
    throw PreconditionError("counting formula needs an exact minimal set M; use the interpolation route");
  if (m.elements.size() > kMaxSubsetTerms)
    throw PreconditionError("|M| = " + std::to_string(m.elements.size()) +
                            " is above the subset cap; use the interpolation route");
  return subset_terms(m.elements, m.elements.empty() ? 0 : m.elements.front().size());
}

BigInt nr_count(const PointConfig& a, const MinimalUselessSet& m, std::int64_t h) {
  return evaluate_terms(nr_terms(m), h, static_cast<unsigned>(a.size() - 1));
}

KhovanskiiBounds khovanskii_bounds(const PointConfig& a, const MinimalUselessSet* m) {
  const Volumes v = volumes(a);
  const BigInt l = static_cast<unsigned long>(a.size());
  KhovanskiiBounds b;
  b.improved = l * l * v.vol_dag_max - l + 1;
  b.gsw = pow(BigInt(2 * l * v.width), (a.dim() + 4) * a.size());
  if (m && m->status == ScanStatus::exact) {
    ExponentVector top(a.size(), 0);
    for (const auto& e : m->elements)
      for (std::size_t i = 0; i < top.size(); ++i) top[i] = std::max(top[i], e[i]);
    b.intermediate = BigInt(static_cast<long>(weight(top))) - l + 1;
  }
  return b;
}

namespace {

RationalPolynomial formula_polynomial(const PointConfig& a, const MinimalUselessSet& m) {
  const unsigned k = static_cast<unsigned>(a.size() - 1);
  RationalPolynomial p;
  for (const auto& [w, c] : nr_terms(m))
    p += RationalPolynomial::shifted_binomial(BigInt(static_cast<long>(k) - w), k) * Rational(c);
  if (p.degree() > static_cast<int>(a.dim()))
    throw InternalError("counting formula polynomial has degree above d");
  return p;
}

// Fit on N = start..start+d, check start+d+1. growth[N-1] = |NA|.
RationalPolynomial interpolate_growth(const std::vector<std::uint64_t>& growth, std::int64_t start, std::size_t d) {
  std::vector<BigInt> values;
  for (std::size_t i = 0; i <= d; ++i)
    values.emplace_back(static_cast<unsigned long>(growth[static_cast<std::size_t>(start) - 1 + i]));
  auto p = RationalPolynomial::interpolate_consecutive(BigInt(static_cast<long>(start)), values);
  const std::int64_t check = start + static_cast<std::int64_t>(d) + 1;
  if (!fits(p, check, growth[static_cast<std::size_t>(check) - 1]))
    throw InternalError("interpolated polynomial fails the check at N = " + std::to_string(check));
  return p;
}

std::vector<std::uint64_t> growth_values(const PointConfig& a, std::int64_t n_max, std::uint64_t max_cells) {
  std::vector<std::uint64_t> out;
  for (const auto& r : sumset_iterate(a, n_max, false, max_cells).rows) out.push_back(r.cardinality);
  return out;
}

}  // namespace

RationalPolynomial khovanskii_polynomial(const PointConfig& a, Route route, const ScanCaps& caps,
                                         std::uint64_t max_cells) {
  if (route != Route::interpolation) {
    const auto m = minimal_useless(a, caps);
    const bool usable = m.status == ScanStatus::exact && m.elements.size() <= kMaxSubsetTerms;
    if (usable) return formula_polynomial(a, m);
    if (route == Route::formula) nr_terms(m);  // throws with the reason
  }
  const std::int64_t b = to_i64(khovanskii_bounds(a).improved);
  const std::size_t d = a.dim();
  const auto growth = growth_values(a, b + static_cast<std::int64_t>(d) + 1, max_cells);
  return interpolate_growth(growth, b, d);
}

KhovanskiiResult khovanskii_threshold_exact(const PointConfig& a, Route route, const ScanCaps& caps,
                                            std::uint64_t max_cells) {
  const std::size_t d = a.dim();
  KhovanskiiResult res;
  std::optional<RationalPolynomial> formula;
  if (route != Route::interpolation) {
    res.minimal = minimal_useless(a, caps);
    const bool usable = res.minimal->status == ScanStatus::exact && res.minimal->elements.size() <= kMaxSubsetTerms;
    if (usable)
      formula = formula_polynomial(a, *res.minimal);
    else if (route == Route::formula)
      nr_terms(*res.minimal);
  }
  const KhovanskiiBounds bounds = khovanskii_bounds(a, res.minimal ? &*res.minimal : nullptr);
  BigInt b = bounds.improved;
  if (bounds.intermediate && *bounds.intermediate < b) b = *bounds.intermediate;
  if (b < 1) b = 1;
  const std::int64_t window = to_i64(b);

  const std::int64_t want = formula ? window : window + static_cast<std::int64_t>(d) + 1;
  const std::int64_t reach = std::min(want, SumsetGrid::max_feasible_n(a, max_cells));
  if (reach < want) res.status = ThresholdStatus::empirical;
  res.window_end = formula ? reach : reach - static_cast<std::int64_t>(d) - 1;
  if (res.window_end < 1)
    throw ResourceError("sumset grid budget too small to compare any N against the polynomial", reach);
  res.growth = growth_values(a, reach, max_cells);

  if (formula) {
    res.polynomial = *formula;
    res.route_used = Route::formula;
  } else {
    res.polynomial = interpolate_growth(res.growth, res.window_end, d);
    res.route_used = Route::interpolation;
  }

  std::int64_t n = res.window_end;
  if (!fits(res.polynomial, n, res.growth[static_cast<std::size_t>(n) - 1])) {
    if (res.status == ThresholdStatus::exact) throw InternalError("|NA| differs from P_A at the proven bound");
    res.threshold = n + 1;
    return res;
  }
  while (n > 1 && fits(res.polynomial, n - 1, res.growth[static_cast<std::size_t>(n) - 2])) --n;
  res.threshold = n;
  res.growth.resize(static_cast<std::size_t>(res.window_end));
  return res;
}

RationalPolynomial ehrhart_polynomial(const PointConfig& a) {
  const std::size_t d = a.dim();
  std::vector<BigInt> values;
  for (std::size_t n = 0; n <= d; ++n) values.push_back(count_dilate_points(a, static_cast<std::int64_t>(n)));
  auto p = RationalPolynomial::interpolate_consecutive(BigInt(0), values);
  const auto check = static_cast<std::int64_t>(d + 1);
  if (p(Rational(static_cast<long>(check))) != Rational(count_dilate_points(a, check)))
    throw InternalError("lattice point counts are not polynomial in N");
  return p;
}

}  // namespace sumset

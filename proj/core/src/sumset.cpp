#include "sumset/sumset.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "sumset/errors.hpp"
#include "sumset/polytope.hpp"

namespace sumset {

namespace {

// Number of cells of the box [0, n*w_i] per coordinate, saturating.
std::uint64_t box_cells(const IPoint& width, std::int64_t n) {
  unsigned __int128 cells = 1;
  for (auto w : width) {
    cells *= static_cast<unsigned __int128>(n) * static_cast<unsigned __int128>(w) + 1;
    if (cells > std::numeric_limits<std::uint64_t>::max() / 2) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(cells);
}

}  // namespace

SumsetGrid::SumsetGrid(const PointConfig& a, std::int64_t n_max, std::uint64_t max_cells) : n_max_(n_max) {
  if (n_max < 1) throw PreconditionError("sumset: N_max must be at least 1");
  const auto pts = a.to_ipoints();
  const std::size_t d = a.dim();
  lo_.assign(d, 0);
  width_.assign(d, 0);
  for (std::size_t c = 0; c < d; ++c) {
    std::int64_t lo = pts[0][c], hi = pts[0][c];
    for (const auto& p : pts) {
      lo = std::min(lo, p[c]);
      hi = std::max(hi, p[c]);
    }
    lo_[c] = lo;
    width_[c] = hi - lo;
  }
  const std::uint64_t cells = box_cells(width_, n_max);
  if (cells > max_cells) {
    throw ResourceError("sumset grid for N = " + std::to_string(n_max) + " needs " + std::to_string(cells) +
                            " cells, above the budget of " + std::to_string(max_cells),
                        max_feasible_n(a, max_cells));
  }
  stride_.assign(d, 1);
  for (std::size_t c = d; c-- > 1;)
    stride_[c - 1] = stride_[c] * static_cast<std::uint64_t>(n_max * width_[c] + 1);
  for (const auto& p : pts) {
    std::uint64_t off = 0;
    for (std::size_t c = 0; c < d; ++c) off += static_cast<std::uint64_t>(p[c] - lo_[c]) * stride_[c];
    offsets_.push_back(off);
  }
  bits_.assign((cells + 63) / 64, 0);
  scratch_.assign(bits_.size(), 0);
  bits_[0] = 1;  // 0·A = {0}
}

std::int64_t SumsetGrid::max_feasible_n(const PointConfig& a, std::uint64_t max_cells) {
  const auto pts = a.to_ipoints();
  IPoint width(a.dim(), 0);
  for (std::size_t c = 0; c < a.dim(); ++c) {
    std::int64_t lo = pts[0][c], hi = pts[0][c];
    for (const auto& p : pts) {
      lo = std::min(lo, p[c]);
      hi = std::max(hi, p[c]);
    }
    width[c] = hi - lo;
  }
  if (box_cells(width, 1) > max_cells) return 0;
  std::int64_t good = 1, bad = 2;
  while (box_cells(width, bad) <= max_cells) {
    good = bad;
    if (bad > (std::int64_t{1} << 40)) return bad;
    bad *= 2;
  }
  while (bad - good > 1) {
    const std::int64_t mid = good + (bad - good) / 2;
    (box_cells(width, mid) <= max_cells ? good : bad) = mid;
  }
  return good;
}

std::size_t SumsetGrid::active_words(std::int64_t n) const {
  std::uint64_t top = 0;
  for (std::size_t c = 0; c < width_.size(); ++c) top += static_cast<std::uint64_t>(n * width_[c]) * stride_[c];
  return std::min<std::size_t>(bits_.size(), top / 64 + 1);
}

void SumsetGrid::advance() {
  if (n_ >= n_max_) throw PreconditionError("sumset grid already at N_max");
  const std::size_t src_words = active_words(n_);
  const std::size_t dst_words = active_words(n_ + 1);
  std::fill(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(dst_words), 0);
  for (const std::uint64_t off : offsets_) {
    const std::size_t q = off / 64;
    const unsigned r = off % 64;
    for (std::size_t i = 0; i < src_words && i + q < dst_words; ++i) {
      const std::uint64_t w = bits_[i];
      if (w == 0) continue;
      scratch_[i + q] |= w << r;
      if (r != 0 && i + q + 1 < dst_words) scratch_[i + q + 1] |= w >> (64 - r);
    }
  }
  std::swap(bits_, scratch_);
  ++n_;
}

std::uint64_t SumsetGrid::cardinality() const {
  std::uint64_t total = 0;
  const std::size_t words = active_words(n_);
  for (std::size_t i = 0; i < words; ++i) total += static_cast<std::uint64_t>(std::popcount(bits_[i]));
  return total;
}

std::size_t SumsetGrid::linear_index(const IPoint& shifted) const {
  std::uint64_t idx = 0;
  for (std::size_t c = 0; c < shifted.size(); ++c) idx += static_cast<std::uint64_t>(shifted[c]) * stride_[c];
  return idx;
}

bool SumsetGrid::contains(const IPoint& x) const {
  if (x.size() != lo_.size()) throw DimensionError("sumset grid: point has wrong dimension");
  IPoint y(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    y[c] = x[c] - n_ * lo_[c];
    if (y[c] < 0 || y[c] > n_ * width_[c]) return false;
  }
  const std::size_t idx = linear_index(y);
  return (bits_[idx / 64] >> (idx % 64)) & 1U;
}

std::vector<IPoint> SumsetGrid::points() const {
  std::vector<IPoint> out;
  const std::size_t words = active_words(n_);
  const std::size_t d = lo_.size();
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t w = bits_[i];
    while (w) {
      const unsigned b = static_cast<unsigned>(std::countr_zero(w));
      w &= w - 1;
      std::uint64_t idx = i * 64 + b;
      IPoint x(d);
      for (std::size_t c = 0; c < d; ++c) {
        x[c] = static_cast<std::int64_t>(idx / stride_[c]) + n_ * lo_[c];
        idx %= stride_[c];
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

GrowthTable sumset_iterate(const PointConfig& a, std::int64_t n_max, bool retain_points, std::uint64_t max_cells) {
  SumsetGrid grid(a, n_max, max_cells);
  GrowthTable table;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    grid.advance();
    GrowthRecord rec{n, grid.cardinality(), std::nullopt};
    if (retain_points) rec.points = grid.points();
    table.rows.push_back(std::move(rec));
  }
  return table;
}

// ---------------------------------------------------------------------------

SemigroupOracle::SemigroupOracle(const PointConfig& b) : dim_(b.dim()) {
  const auto origin = b.origin_index();
  if (!origin) throw PreconditionError("semigroup: the generating set must contain the origin");
  const PointConfig fresh(b.dim(), b.points());
  PointConfig local = [&] {
    try {
      return normalize_config(fresh, Point(b.dim()));
    } catch (const PreconditionError&) {
      throw PreconditionError("semigroup: the cone is not pointed (origin is not a vertex)");
    }
  }();
  normalization_ = local.normalization();
  identity_ = normalization_.basis == IntMatrix::identity(dim_) &&
              std::all_of(normalization_.translation.begin(), normalization_.translation.end(),
                          [](const BigInt& x) { return x == 0; });
  const auto pts = local.to_ipoints();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i == *origin) continue;
    generator_index_.push_back(i);
    generators_.push_back(pts[i]);
  }
  if (local.dim() > 0) {
    const Polytope p = convex_hull(local);
    for (const auto& f : p.inner_facets) {
      IPoint g;
      for (const auto& c : f.coefficients) g.push_back(to_i64(c.get_num()));
      cone_.push_back(std::move(g));
    }
    for (const auto& g : generators_) {
      std::int64_t rank = 0;
      for (const auto& gamma : cone_)
        for (std::size_t c = 0; c < g.size(); ++c) rank += gamma[c] * g[c];
      if (rank <= 0) throw InternalError("semigroup: ranking functional not positive on a generator");
    }
  }
}

std::optional<IPoint> SemigroupOracle::local(const IPoint& p) const {
  if (p.size() != dim_) throw DimensionError("semigroup: point has wrong dimension");
  if (identity_) return p;
  Point q;
  for (auto x : p) q.emplace_back(static_cast<long>(x));
  auto y = normalization_.to_local(q);
  if (!y) return std::nullopt;
  IPoint out;
  for (const auto& v : *y) out.push_back(to_i64(v));
  return out;
}

bool SemigroupOracle::in_local_cone(const IPoint& y) const {
  for (const auto& gamma : cone_) {
    __int128 s = 0;
    for (std::size_t c = 0; c < y.size(); ++c) s += static_cast<__int128>(gamma[c]) * y[c];
    if (s < 0) return false;
  }
  return true;
}

bool SemigroupOracle::in_cone(const IPoint& p) const {
  // Cone points outside the lattice still belong to C_B; test over Q.
  if (p.size() != dim_) throw DimensionError("semigroup: point has wrong dimension");
  if (identity_) return in_local_cone(p);
  RationalVector target;
  for (std::size_t c = 0; c < dim_; ++c) target.emplace_back(p[c] - to_i64(normalization_.translation[c]));
  std::vector<RationalVector> cols;
  for (std::size_t k = 0; k < normalization_.basis.rows(); ++k) {
    RationalVector col;
    for (std::size_t c = 0; c < dim_; ++c) col.emplace_back(normalization_.basis(k, c));
    cols.push_back(std::move(col));
  }
  if (cols.empty()) return std::all_of(p.begin(), p.end(), [](auto x) { return x == 0; });
  auto y = solve_in_span(cols, target);
  if (!y) return false;
  for (const auto& gamma : cone_) {
    Rational s = 0;
    for (std::size_t c = 0; c < y->size(); ++c) s += gamma[c] * (*y)[c];
    if (s < 0) return false;
  }
  return true;
}

bool SemigroupOracle::solve(const IPoint& root) {
  if (auto it = member_.find(root); it != member_.end()) return it->second != -1;
  struct Frame {
    IPoint y;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({root, 0});
  IPoint child(root.size());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (std::all_of(f.y.begin(), f.y.end(), [](auto x) { return x == 0; })) {
      member_[f.y] = -2;
      stack.pop_back();
      continue;
    }
    bool descended = false;
    bool found = false;
    while (f.next < generators_.size()) {
      const auto& g = generators_[f.next];
      for (std::size_t c = 0; c < child.size(); ++c) child[c] = f.y[c] - g[c];
      if (!in_local_cone(child)) {
        ++f.next;
        continue;
      }
      auto it = member_.find(child);
      if (it == member_.end()) {
        stack.push_back({child, 0});
        descended = true;
        break;
      }
      if (it->second != -1) {
        found = true;
        break;
      }
      ++f.next;
    }
    if (descended) continue;
    Frame& top = stack.back();
    member_[top.y] = found ? static_cast<std::int32_t>(top.next) : -1;
    stack.pop_back();
  }
  return member_.at(root) != -1;
}

bool SemigroupOracle::contains(const IPoint& p) {
  auto y = local(p);
  if (!y || !in_local_cone(*y)) return false;
  std::lock_guard lock(mutex_);
  return solve(*y);
}

std::optional<std::vector<std::int64_t>> SemigroupOracle::certificate(const IPoint& p) {
  auto y = local(p);
  if (!y || !in_local_cone(*y)) return std::nullopt;
  std::lock_guard lock(mutex_);
  if (!solve(*y)) return std::nullopt;
  std::vector<std::int64_t> coeffs(generator_index_.size() + 1, 0);
  IPoint cur = *y;
  while (true) {
    const std::int32_t step = member_.at(cur);
    if (step == -2) break;
    coeffs[generator_index_[static_cast<std::size_t>(step)]] += 1;
    for (std::size_t c = 0; c < cur.size(); ++c) cur[c] -= generators_[static_cast<std::size_t>(step)][c];
  }
  return coeffs;
}

std::int64_t SemigroupOracle::solve_min(const IPoint& root) {
  if (auto it = min_.find(root); it != min_.end()) return it->second.first;
  struct Frame {
    IPoint y;
    std::size_t next;
    std::int64_t best;
    std::int32_t via;
  };
  std::vector<Frame> stack;
  stack.push_back({root, 0, -1, -1});
  IPoint child(root.size());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (std::all_of(f.y.begin(), f.y.end(), [](auto x) { return x == 0; })) {
      min_[f.y] = {0, -1};
      stack.pop_back();
      continue;
    }
    bool descended = false;
    while (f.next < generators_.size()) {
      const auto& g = generators_[f.next];
      for (std::size_t c = 0; c < child.size(); ++c) child[c] = f.y[c] - g[c];
      if (!in_local_cone(child)) {
        ++f.next;
        continue;
      }
      auto it = min_.find(child);
      if (it == min_.end()) {
        stack.push_back({child, 0, -1, -1});
        descended = true;
        break;
      }
      const std::int64_t w = it->second.first;
      if (w >= 0 && (f.best < 0 || w + 1 < f.best)) {
        f.best = w + 1;
        f.via = static_cast<std::int32_t>(f.next);
      }
      ++f.next;
    }
    if (descended) continue;
    Frame& top = stack.back();
    min_[top.y] = {top.best, top.via};
    stack.pop_back();
  }
  return min_.at(root).first;
}

std::optional<std::vector<std::int64_t>> SemigroupOracle::min_weight_representation(const IPoint& p) {
  auto y = local(p);
  if (!y || !in_local_cone(*y)) return std::nullopt;
  std::lock_guard lock(mutex_);
  if (solve_min(*y) < 0) return std::nullopt;
  std::vector<std::int64_t> coeffs(generator_index_.size() + 1, 0);
  IPoint cur = *y;
  while (true) {
    const auto [w, via] = min_.at(cur);
    if (w == 0) break;
    coeffs[generator_index_[static_cast<std::size_t>(via)]] += 1;
    for (std::size_t c = 0; c < cur.size(); ++c) cur[c] -= generators_[static_cast<std::size_t>(via)][c];
  }
  return coeffs;
}

std::size_t SemigroupOracle::cache_size() const {
  std::lock_guard lock(mutex_);
  return member_.size() + min_.size();
}

Membership semigroup_contains(const PointConfig& b, const IPoint& p) {
  SemigroupOracle oracle(b);
  auto cert = oracle.certificate(p);
  if (!cert) return {false, {}};
  return {true, std::move(*cert)};
}

// ---------------------------------------------------------------------------

std::vector<IPoint> region_points(const PointConfig& a, const RegionSpec& region) {
  if (const auto* dil = std::get_if<DilateRegion>(&region)) return enumerate_dilate_points(a, dil->n);
  const auto& box = std::get<BoxRegion>(region);
  if (box.lo.size() != a.dim() || box.hi.size() != a.dim()) throw DimensionError("region box has wrong dimension");
  std::vector<IPoint> out;
  for (std::size_t c = 0; c < box.lo.size(); ++c)
    if (box.lo[c] > box.hi[c]) return out;
  IPoint x = box.lo;
  while (true) {
    out.push_back(x);
    std::size_t c = x.size();
    while (c > 0) {
      --c;
      if (x[c] < box.hi[c]) {
        ++x[c];
        break;
      }
      x[c] = box.lo[c];
      if (c == 0) return out;
    }
    if (x.empty()) return out;
  }
}

std::vector<IPoint> exceptional_in_region(const PointConfig& a, const RegionSpec& region) {
  SemigroupOracle oracle(a);
  std::vector<IPoint> out;
  for (const auto& x : region_points(a, region))
    if (oracle.in_cone(x) && !oracle.contains(x)) out.push_back(x);
  return out;
}

}  // namespace sumset

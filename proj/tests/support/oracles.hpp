#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library's algorithms; only usable on tiny inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "sumset/numeric.hpp"

namespace oracle {

using sumset::BigInt;
using sumset::Rational;
using Vec = std::vector<std::int64_t>;
using Points = std::vector<Vec>;

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(const Vec& a, std::int64_t k) {
  Vec r(a);
  for (auto& x : r) x *= k;
  return r;
}

/// NA by repeated set addition.
inline std::set<Vec> sumset(const Points& a, std::int64_t n) {
  std::set<Vec> cur(a.begin(), a.end());
  for (std::int64_t k = 1; k < n; ++k) {
    std::set<Vec> next;
    for (const auto& x : cur)
      for (const auto& p : a) next.insert(add(x, p));
    cur = std::move(next);
  }
  return cur;
}

/// All weak compositions of `total` into `parts` parts, in lexicographic order.
inline std::vector<Vec> compositions(std::size_t parts, std::int64_t total) {
  std::vector<Vec> out;
  Vec cur(parts, 0);
  auto rec = [&](auto& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == parts) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (parts > 0) rec(rec, 0, total);
  return out;
}

inline Vec image(const Points& a, const Vec& m) {
  Vec x(a.front().size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) x = add(x, scale(a[i], m[i]));
  return x;
}

inline std::vector<Vec> representations(const Points& a, const Vec& x, std::int64_t h) {
  std::vector<Vec> out;
  for (const auto& m : compositions(a.size(), h))
    if (image(a, m) == x) out.push_back(m);
  return out;
}

/// Minimal elements (under the componentwise order) of the set of
/// non-lex-minimal representations, among all vectors of weight <= max_weight.
inline std::vector<Vec> minimal_useless(const Points& a, std::int64_t max_weight) {
  std::set<Vec> useless;
  for (std::int64_t h = 0; h <= max_weight; ++h) {
    std::map<Vec, Vec> least;
    const auto all = compositions(a.size(), h);
    for (const auto& m : all) {
      auto [it, fresh] = least.emplace(image(a, m), m);
      if (!fresh) useless.insert(m);  // compositions come in lex order
    }
  }
  std::vector<Vec> out;
  for (const auto& m : useless) {
    bool minimal = true;
    for (std::size_t i = 0; i < m.size() && minimal; ++i) {
      if (m[i] == 0) continue;
      Vec below = m;
      --below[i];
      if (useless.count(below)) minimal = false;
    }
    if (minimal) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](const Vec& x, const Vec& y) {
    const auto wx = std::accumulate(x.begin(), x.end(), std::int64_t{0});
    const auto wy = std::accumulate(y.begin(), y.end(), std::int64_t{0});
    return wx != wy ? wx < wy : x < y;
  });
  return out;
}

/// Leibniz expansion.
inline BigInt determinant(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    BigInt term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    total += inversions % 2 ? BigInt(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Solves the square system m y = b over Q; nullopt when singular.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[i] / m[i][i];
  return y;
}

inline void for_subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto& self, std::size_t start) -> void {
    if (cur.size() == k) {
      f(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

/// x in conv(a), by Caratheodory over (d+1)-subsets (A must be full-dimensional).
inline bool in_hull(const Points& a, const Vec& x) {
  const std::size_t d = x.size();
  bool found = false;
  for_subsets(a.size(), d + 1, [&](const std::vector<std::size_t>& s) {
    if (found) return;
    std::vector<std::vector<Rational>> m(d + 1, std::vector<Rational>(d + 1));
    std::vector<Rational> b(d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
      for (std::size_t k = 0; k < d; ++k) m[k][j] = Rational(static_cast<long>(a[s[j]][k]));
      m[d][j] = 1;
    }
    for (std::size_t k = 0; k < d; ++k) b[k] = Rational(static_cast<long>(x[k]));
    b[d] = 1;
    const auto y = solve(m, b);
    if (y && std::all_of(y->begin(), y->end(), [](const Rational& v) { return v >= 0; })) found = true;
  });
  return found;
}

/// x in the real cone spanned by gens, by Caratheodory over d-subsets.
inline bool in_cone(const Points& gens, const Vec& x) {
  const std::size_t d = x.size();
  if (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; })) return true;
  bool found = false;
  for_subsets(gens.size(), d, [&](const std::vector<std::size_t>& s) {
    if (found) return;
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
    std::vector<Rational> b(d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) m[k][j] = Rational(static_cast<long>(gens[s[j]][k]));
    for (std::size_t k = 0; k < d; ++k) b[k] = Rational(static_cast<long>(x[k]));
    const auto y = solve(m, b);
    if (y && std::all_of(y->begin(), y->end(), [](const Rational& v) { return v >= 0; })) found = true;
  });
  return found;
}

/// A functional positive on every generator of a pointed cone: the sum of
/// the inner normals of all supporting hyperplanes spanned by d-1 generators.
inline Vec positive_functional(const Points& gens) {
  const std::size_t d = gens.front().size();
  if (d == 1) return {gens.front()[0] > 0 ? 1 : -1};
  Vec phi(d, 0);
  for_subsets(gens.size(), d - 1, [&](const std::vector<std::size_t>& s) {
    Vec normal(d);
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<std::vector<BigInt>> minor;
      for (auto i : s) {
        std::vector<BigInt> row;
        for (std::size_t j = 0; j < d; ++j)
          if (j != k) row.push_back(BigInt(static_cast<long>(gens[i][j])));
        minor.push_back(std::move(row));
      }
      normal[k] = (k % 2 ? -1 : 1) * determinant(minor).get_si();
    }
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      std::int64_t v = 0;
      for (std::size_t k = 0; k < d; ++k) v += normal[k] * g[k];
      pos = pos || v > 0;
      neg = neg || v < 0;
    }
    if (pos == neg) return;  // zero normal or a hyperplane through the interior
    for (std::size_t k = 0; k < d; ++k) phi[k] += neg ? -normal[k] : normal[k];
  });
  for (const auto& g : gens) {
    std::int64_t v = 0;
    for (std::size_t k = 0; k < d; ++k) v += phi[k] * g[k];
    if (v <= 0) throw std::logic_error("oracle: cone is not pointed");
  }
  return phi;
}

/// x in the semigroup generated by gens (all nonzero, pointed cone), by
/// breadth-first search bounded by a functional positive on every generator.
inline bool in_semigroup(const Points& gens, const Vec& x) {
  const std::size_t d = x.size();
  if (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; })) return true;
  const std::optional<Vec> phi = positive_functional(gens);
  std::int64_t depth = 0;
  for (std::size_t k = 0; k < d; ++k) depth += (*phi)[k] * x[k];
  if (depth <= 0) return false;
  std::set<Vec> level{Vec(d, 0)};
  for (std::int64_t s = 1; s <= depth; ++s) {
    std::set<Vec> next;
    for (const auto& y : level)
      for (const auto& g : gens) {
        const Vec z = add(y, g);
        std::int64_t val = 0;
        for (std::size_t k = 0; k < d; ++k) val += (*phi)[k] * z[k];
        if (val <= depth) next.insert(z);
      }
    if (next.count(x)) return true;
    level = std::move(next);
    if (level.empty()) break;
  }
  return false;
}

/// All lattice points of the box spanned by N times the bounding box of A.
inline std::vector<Vec> dilate_box(const Points& a, std::int64_t n) {
  const std::size_t d = a.front().size();
  Vec lo(d, INT64_MAX), hi(d, INT64_MIN);
  for (const auto& p : a)
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k] * n);
      hi[k] = std::max(hi[k], p[k] * n);
    }
  std::vector<Vec> out;
  Vec cur = lo;
  while (true) {
    out.push_back(cur);
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (cur[k] < hi[k]) {
        ++cur[k];
        for (std::size_t j = k + 1; j < d; ++j) cur[j] = lo[j];
        break;
      }
      if (k == 0) return out;
    }
  }
}

/// |NH(A) ∩ Z^d|.
inline std::size_t lattice_count(const Points& a, std::int64_t n) {
  Points scaled;
  for (const auto& p : a) scaled.push_back(scale(p, n));
  std::size_t c = 0;
  for (const auto& x : dilate_box(a, n)) c += in_hull(scaled, x);
  return c;
}

/// Vertices of H(A): points not in the hull of the others.
inline Points vertices(const Points& a) {
  Points out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Points rest;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) rest.push_back(a[j]);
    if (rest.size() <= a.front().size() || !in_hull(rest, a[i])) out.push_back(a[i]);
  }
  return out;
}

/// Right-hand side of the structure equation straight from the definition:
/// NH ∩ Z^d minus, for each vertex a, the points aN - e with e in the
/// cone of a - A but outside the semigroup of a - A.
inline std::set<Vec> structure_rhs(const Points& a, std::int64_t n) {
  Points scaled;
  for (const auto& p : a) scaled.push_back(scale(p, n));
  const Points ex = vertices(a);
  std::vector<Points> gens;
  for (const auto& v : ex) {
    Points g;
    for (const auto& p : a)
      if (p != v) g.push_back(sub(v, p));
    gens.push_back(std::move(g));
  }
  std::set<Vec> out;
  for (const auto& x : dilate_box(a, n)) {
    if (!in_hull(scaled, x)) continue;
    bool excluded = false;
    for (std::size_t i = 0; i < ex.size() && !excluded; ++i) {
      const Vec y = sub(scale(ex[i], n), x);
      excluded = in_cone(gens[i], y) && !in_semigroup(gens[i], y);
    }
    if (!excluded) out.insert(x);
  }
  return out;
}

}  // namespace oracle

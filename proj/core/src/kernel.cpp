#include "sumset/kernel.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sumset/errors.hpp"
#include "sumset/polytope.hpp"
#include "sumset/sumset.hpp"

namespace sumset {

namespace {

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    f(std::as_const(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int sign(const BigInt& x) { return sgn(x); }
int sign(const Rational& x) { return sgn(x); }

// +1 or -1 if u (in that orientation) is conformal to v, else 0.
int conformal_orientation(const KernelVector& u, const RationalVector& v) {
  for (int s : {1, -1}) {
    bool ok = true;
    for (std::size_t i = 0; i < u.size() && ok; ++i) {
      const int su = s * sign(u[i]);
      if (su != 0 && su != sign(v[i])) ok = false;
    }
    if (ok) return s;
  }
  return 0;
}

BigInt lcm_of_denominators(const RationalVector& v) {
  BigInt l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

void require_pointed(const Polytope& p, std::size_t origin) {
  if (!std::binary_search(p.extremal_index.begin(), p.extremal_index.end(), origin))
    throw PreconditionError("the origin must be a vertex of H(A)");
}

std::size_t require_origin(const PointConfig& a) {
  auto o = a.origin_index();
  if (!o) throw PreconditionError("A must contain the origin");
  return *o;
}

bool inside_facet(const FacetFunctional& f, std::span<const std::size_t> s) {
  return std::all_of(s.begin(), s.end(),
                     [&](std::size_t i) { return std::binary_search(f.incident.begin(), f.incident.end(), i); });
}

}  // namespace

BigInt weight(const KernelVector& v) {
  BigInt w = 0;
  for (const auto& x : v) w += x;
  return w;
}

std::int64_t weight(const ExponentVector& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

IntMatrix augmented_matrix(const PointConfig& a) {
  IntMatrix m(a.dim() + 1, a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t c = 0; c < a.dim(); ++c) m(c, j) = a[j][c];
    m(a.dim(), j) = 1;
  }
  return m;
}

bool in_kernel(const PointConfig& a, const KernelVector& v) {
  if (v.size() != a.size()) return false;
  const IntMatrix m = augmented_matrix(a);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(r, j) * v[j];
    if (s != 0) return false;
  }
  return true;
}

KernelVector normalize_circuit(KernelVector v) {
  BigInt g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return v;
  auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

std::vector<KernelVector> kernel_lattice(const PointConfig& a) {
  std::vector<KernelVector> out;
  for (auto& z : integer_kernel(augmented_matrix(a))) out.push_back(normalize_circuit(std::move(z)));
  return out;
}

std::vector<KernelVector> circuits(const PointConfig& a) {
  const IntMatrix m = augmented_matrix(a);
  // Rows spanning the row space; the others are combinations of these on
  // every column subset, so they never change a kernel.
  std::vector<std::size_t> rows;
  {
    std::vector<Point> picked;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      picked.push_back(m.row(r));
      if (rank(IntMatrix::from_rows(picked, m.cols())) == picked.size())
        rows.push_back(r);
      else
        picked.pop_back();
    }
  }
  const std::size_t r = rows.size();
  std::vector<KernelVector> out;
  std::set<KernelVector> seen;
  for_each_combination(a.size(), r + 1, [&](const std::vector<std::size_t>& cols) {
    KernelVector w(a.size(), 0);
    bool nonzero = false;
    for (std::size_t j = 0; j <= r; ++j) {
      IntMatrix minor(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0, kk = 0; k <= r; ++k) {
          if (k == j) continue;
          minor(i, kk++) = m(rows[i], cols[k]);
        }
      BigInt det = r == 0 ? BigInt(1) : determinant(minor);
      if (j % 2 == 1) det = -det;
      if (det != 0) nonzero = true;
      w[cols[j]] = det;
    }
    if (!nonzero) return;
    w = normalize_circuit(std::move(w));
    if (seen.insert(w).second) out.push_back(std::move(w));
  });
  return out;
}

std::optional<KernelVector> conformal_circuit(std::span<const KernelVector> circuit_list, const RationalVector& v) {
  const KernelVector* best = nullptr;
  int best_sign = 0;
  for (const auto& u : circuit_list) {
    const int s = conformal_orientation(u, v);
    if (s == 0) continue;
    if (!best || u < *best) {
      best = &u;
      best_sign = s;
    }
  }
  if (!best) return std::nullopt;
  KernelVector out = *best;
  if (best_sign < 0)
    for (auto& x : out) x = -x;
  return out;
}

std::vector<ConformalTerm> conformal_decompose(const PointConfig& a, const KernelVector& v) {
  const auto list = circuits(a);
  return conformal_decompose(a, v, list);
}

std::vector<ConformalTerm> conformal_decompose(const PointConfig& a, const KernelVector& v,
                                               std::span<const KernelVector> circuit_list) {
  if (v.size() != a.size()) throw DimensionError("conformal_decompose: vector length differs from |A|");
  if (std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; }))
    throw PreconditionError("conformal_decompose: v must be nonzero");
  if (!in_kernel(a, v)) throw PreconditionError("conformal_decompose: v is not in the kernel lattice Z(A)");

  RationalVector cur(v.begin(), v.end());
  const std::size_t support = static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; }));
  std::vector<ConformalTerm> terms;
  while (std::any_of(cur.begin(), cur.end(), [](const Rational& x) { return x != 0; })) {
    auto u = conformal_circuit(circuit_list, cur);
    if (!u) throw InternalError("conformal_decompose: no conformal circuit for a nonzero kernel vector");
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < u->size(); ++i) {
      if ((*u)[i] == 0) continue;
      Rational r = cur[i] / Rational((*u)[i]);
      r.canonicalize();
      if (!lambda || r < *lambda) lambda = r;
    }
    for (std::size_t i = 0; i < u->size(); ++i) {
      cur[i] -= *lambda * (*u)[i];
      cur[i].canonicalize();
    }
    terms.push_back({*lambda, std::move(*u)});
    if (terms.size() > support) throw InternalError("conformal_decompose: more terms than |supp(v)|");
  }
  return terms;
}

Reduction find_reduction(const PointConfig& a, std::span<const std::size_t> s) {
  const std::size_t d = a.dim();
  const std::size_t origin = require_origin(a);
  const Polytope hull = convex_hull(a);
  require_pointed(hull, origin);
  if (s.empty()) throw PreconditionError("find_reduction: S must be nonempty");
  std::vector<Point> cols;
  for (auto i : s) {
    if (i >= a.size()) throw PreconditionError("find_reduction: index out of range");
    cols.push_back(a[i]);
  }
  if (rank(IntMatrix::from_columns(cols, d)) != s.size())
    throw PreconditionError("find_reduction: S is not linearly independent");
  for (const auto& f : hull.outer_facets)
    if (inside_facet(f, s)) throw PreconditionError("find_reduction: S lies in an outer facet");

  // Barycentre q, pushed outwards to p = (1 + eps) q, still inside H(A).
  const Rational size(static_cast<long>(s.size()));
  RationalVector q(d, Rational(0));
  for (auto i : s)
    for (std::size_t c = 0; c < d; ++c) q[c] += Rational(a[i][c]) / size;
  std::optional<Rational> beta_hat;
  for (const auto& f : hull.outer_facets) {
    Rational b = 0;
    for (std::size_t c = 0; c < d; ++c) b += f.coefficients[c] * q[c];
    if (!beta_hat || b > *beta_hat) beta_hat = b;
  }
  if (!beta_hat || *beta_hat <= 0 || *beta_hat >= 1) throw InternalError("find_reduction: barycentre not interior");
  Rational eps = (1 / *beta_hat - 1) / 2;
  eps.canonicalize();
  RationalVector p(d);
  for (std::size_t c = 0; c < d; ++c) {
    p[c] = (1 + eps) * q[c];
    p[c].canonicalize();
  }

  // delta: convex weights on A with sum delta_a a = p.
  RationalVector delta(a.size(), Rational(0));
  bool located = false;
  if (std::all_of(p.begin(), p.end(), [](const Rational& x) { return x.get_den() == 1; })) {
    Point pi;
    for (const auto& x : p) pi.push_back(x.get_num());
    for (std::size_t i = 0; i < a.size() && !located; ++i)
      if (a[i] == pi) {
        delta[i] = 1;
        located = true;
      }
  }
  if (!located) {
    for (const auto& simplex : triangulate_from_origin(a).simplices) {
      std::vector<RationalVector> scols;
      for (const auto& v : simplex) scols.emplace_back(v.begin(), v.end());
      auto c = solve_in_span(scols, p);
      if (!c) continue;
      Rational total = 0;
      bool nonneg = true;
      for (const auto& x : *c) {
        if (x < 0) nonneg = false;
        total += x;
      }
      if (!nonneg || total > 1) continue;
      for (std::size_t k = 0; k < simplex.size(); ++k) {
        auto it = std::find(a.points().begin(), a.points().end(), simplex[k]);
        delta[static_cast<std::size_t>(it - a.points().begin())] = (*c)[k];
      }
      delta[origin] = 1 - total;
      located = true;
      break;
    }
  }
  if (!located) throw InternalError("find_reduction: scaled barycentre not covered by the triangulation");

  RationalVector gamma(a.size(), Rational(0));
  for (auto i : s) gamma[i] = (1 + eps) / size;
  RationalVector z(a.size());
  Rational wt_gamma = 1 + eps;
  for (std::size_t i = 0; i < a.size(); ++i) {
    z[i] = i == origin ? Rational(wt_gamma - 1 + delta[origin]) : Rational(delta[i] - gamma[i]);
    z[i].canonicalize();
  }
  const BigInt l = lcm_of_denominators(z);
  KernelVector zi;
  for (const auto& x : z) zi.push_back(BigInt(x * l));

  const auto list = circuits(a);
  const auto terms = conformal_decompose(a, zi, list);
  auto term = std::find_if(terms.begin(), terms.end(), [&](const ConformalTerm& t) { return t.circuit[origin] > 0; });
  if (term == terms.end()) throw InternalError("find_reduction: no circuit through the origin");

  Reduction red{ExponentVector(a.size(), 0), ExponentVector(a.size(), 0)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const BigInt& u = term->circuit[i];
    if (u < 0) red.lambda[i] = to_i64(BigInt(-u));
    if (u > 0 && i != origin) red.rho[i] = to_i64(u);
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (red.lambda[i] != 0 && std::find(s.begin(), s.end(), i) == s.end())
      throw InternalError("find_reduction: lambda escapes S");
  return red;
}

RegularDecomposition regular_decompose(const PointConfig& a, const IPoint& v) {
  const std::size_t origin = require_origin(a);
  const Polytope hull = convex_hull(a);
  require_pointed(hull, origin);
  if (hull.outer_facets.empty()) throw InternalError("regular_decompose: no outer facet");
  const BigInt vol_dag = volumes(a).vol_dag_max;
  const std::int64_t big = to_i64(vol_dag);

  SemigroupOracle oracle(a);
  auto start = oracle.min_weight_representation(v);
  if (!start) throw PreconditionError("regular_decompose: v is not in P(A)");
  ExponentVector eta = std::move(*start);

  const auto list = circuits(a);
  constexpr int kMaxSteps = 100000;
  for (int step = 0; step < kMaxSteps; ++step) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != origin && eta[i] >= big) t.push_back(i);

    for (std::size_t f = 0; f < hull.outer_facets.size(); ++f) {
      const auto& facet = hull.outer_facets[f];
      if (!inside_facet(facet, t)) continue;
      RegularDecomposition out{ExponentVector(a.size(), 0), ExponentVector(a.size(), 0), f};
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == origin) continue;
        if (std::binary_search(facet.incident.begin(), facet.incident.end(), i))
          out.w_rep[i] = eta[i];
        else
          out.u_rep[i] = eta[i];
      }
      return out;
    }

    std::vector<Point> cols;
    for (auto i : t) cols.push_back(a[i]);
    if (rank(IntMatrix::from_columns(cols, a.dim())) == t.size()) {
      // Case I
      const Reduction red = find_reduction(a, t);
      for (std::size_t i = 0; i < a.size(); ++i) eta[i] += red.rho[i] - red.lambda[i];
      continue;
    }
    // Case II: a linear relation among T, completed through the origin.
    std::vector<RationalVector> rows(a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c)
      for (auto i : t) rows[c].emplace_back(a[i][c]);
    const auto null = rational_nullspace(rows, t.size());
    const BigInt l = lcm_of_denominators(null.front());
    RationalVector z(a.size(), Rational(0));
    Rational z0 = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      z[t[k]] = null.front()[k] * l;
      z0 -= z[t[k]];
    }
    z[origin] = z0;
    if (z0 < 0)
      for (auto& x : z) x = -x;
    auto mu = conformal_circuit(list, z);
    if (!mu) throw InternalError("regular_decompose: no conformal circuit");
    if ((*mu)[origin] != 0) {
      // Case IIa
      if ((*mu)[origin] < 0) throw InternalError("regular_decompose: circuit has the wrong sign at the origin");
      for (std::size_t i = 0; i < a.size(); ++i) eta[i] += to_i64((*mu)[i]);
      eta[origin] = 0;
    } else {
      // Case IIb
      std::optional<std::int64_t> n;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if ((*mu)[i] <= 0) continue;
        const std::int64_t q = eta[i] / to_i64((*mu)[i]);
        if (!n || q < *n) n = q;
      }
      if (!n || *n == 0) throw InternalError("regular_decompose: Case IIb made no progress");
      for (std::size_t i = 0; i < a.size(); ++i) eta[i] -= *n * to_i64((*mu)[i]);
    }
    if (std::any_of(eta.begin(), eta.end(), [](std::int64_t x) { return x < 0; }))
      throw InternalError("regular_decompose: negative coefficient after a reduction");
  }
  throw InternalError("regular_decompose: reductions did not terminate");
}

}  // namespace sumset

#include "sumset/lattice.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sumset/errors.hpp"
#include "sumset/polytope.hpp"

namespace sumset {

IntMatrix IntMatrix::from_rows(std::span<const Point> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged rows in matrix construction");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const Point> columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw DimensionError("ragged columns in matrix construction");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Point IntMatrix::row(std::size_t r) const {
  return Point(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Point IntMatrix::column(std::size_t c) const {
  Point out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  BigInt previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt value = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
        m(i, j) = value;
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

std::vector<RationalVector> to_rational_rows(const IntMatrix& m) {
  std::vector<RationalVector> rows(m.rows(), RationalVector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RationalVector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Row HNF with a companion matrix receiving the same row operations.
void hnf_in_place(IntMatrix& m, IntMatrix* companion) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(m(a, c), m(b, c));
    if (companion)
      for (std::size_t c = 0; c < companion->cols(); ++c) std::swap((*companion)(a, c), (*companion)(b, c));
  };
  // row[target] -= q * row[source]
  auto axpy = [&](std::size_t target, std::size_t source, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < cols; ++c) m(target, c) -= q * m(source, c);
    if (companion)
      for (std::size_t c = 0; c < companion->cols(); ++c)
        (*companion)(target, c) -= q * (*companion)(source, c);
  };
  auto negate = [&](std::size_t r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = -m(r, c);
    if (companion)
      for (std::size_t c = 0; c < companion->cols(); ++c) (*companion)(r, c) = -(*companion)(r, c);
  };

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r) {
        if (m(r, c) == 0) continue;
        if (best == rows || abs(m(r, c)) < abs(m(best, c))) best = r;
      }
      if (best == rows) break;
      swap_rows(pivot_row, best);
      bool cleared = true;
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        if (m(r, c) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m(r, c).get_mpz_t(), m(pivot_row, c).get_mpz_t());
        axpy(r, pivot_row, q);
        if (m(r, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (m(pivot_row, c) == 0) continue;
    if (m(pivot_row, c) < 0) negate(pivot_row);
    for (std::size_t r = 0; r < pivot_row; ++r) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), m(r, c).get_mpz_t(), m(pivot_row, c).get_mpz_t());
      axpy(r, pivot_row, q);
    }
    ++pivot_row;
  }
}

bool is_zero(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const BigInt& x) { return x == 0; });
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  auto rows = to_rational_rows(m);
  return rref(rows, m.cols()).size();
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix out = m;
  hnf_in_place(out, nullptr);
  return out;
}

LatticeBasis lattice_basis(std::span<const Point> vectors, std::size_t dim) {
  LatticeBasis out;
  if (vectors.empty()) return out;
  IntMatrix h = hermite_normal_form(IntMatrix::from_rows(vectors, dim));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    Point row = h.row(r);
    if (!is_zero(row)) out.basis.push_back(std::move(row));
  }
  if (out.basis.size() == dim) {
    // Echelon and square: the determinant is the product of the pivots.
    out.index = abs(determinant(IntMatrix::from_rows(out.basis, dim)));
  }
  return out;
}

std::vector<Point> integer_kernel(const IntMatrix& m) {
  // Reduce the rows of m^T while tracking the unimodular transform; rows that
  // vanish carry a basis of the kernel.
  IntMatrix t = m.transposed();
  IntMatrix transform = IntMatrix::identity(t.rows());
  hnf_in_place(t, &transform);
  std::vector<Point> out;
  for (std::size_t r = 0; r < t.rows(); ++r)
    if (is_zero(t.row(r))) out.push_back(transform.row(r));
  return out;
}

std::vector<RationalVector> rational_nullspace(const std::vector<RationalVector>& rows, std::size_t cols) {
  auto reduced = rows;
  const auto pivots = rref(reduced, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -reduced[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<RationalVector> solve_in_span(const std::vector<RationalVector>& columns,
                                            const RationalVector& target) {
  const std::size_t k = columns.size();
  const std::size_t n = target.size();
  std::vector<RationalVector> aug(n, RationalVector(k + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) aug[r][c] = columns[c][r];
    aug[r][k] = target[r];
  }
  const auto pivots = rref(aug, k + 1);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  if (pivots.size() != k) throw PreconditionError("solve_in_span: columns are linearly dependent");
  RationalVector y(k);
  for (std::size_t i = 0; i < k; ++i) y[pivots[i]] = aug[i][k];
  return y;
}

// ---------------------------------------------------------------------------

std::optional<Point> Normalization::to_local(const Point& original) const {
  if (original.size() != translation.size()) throw DimensionError("point dimension mismatch");
  Point x(original.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = original[i] - translation[i];
  Point y(basis.rows());
  std::size_t col = 0;
  for (std::size_t k = 0; k < basis.rows(); ++k) {
    while (basis(k, col) == 0) ++col;
    if (!mpz_divisible_p(x[col].get_mpz_t(), basis(k, col).get_mpz_t())) return std::nullopt;
    y[k] = x[col] / basis(k, col);
    for (std::size_t c = 0; c < x.size(); ++c) x[c] -= y[k] * basis(k, c);
  }
  if (!is_zero(x)) return std::nullopt;
  return y;
}

Point Normalization::to_original(const Point& local) const {
  Point out = translation;
  for (std::size_t k = 0; k < basis.rows(); ++k)
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += local[k] * basis(k, c);
  return out;
}

PointConfig::PointConfig(std::size_t dim, std::vector<Point> points)
    : PointConfig(dim, std::move(points), Normalization{Point(dim), IntMatrix::identity(dim)}) {}

PointConfig::PointConfig(std::size_t dim, std::vector<Point> points, Normalization normalization)
    : dim_(dim), points_(std::move(points)), normalization_(std::move(normalization)) {
  if (points_.empty()) throw PreconditionError("a point configuration needs at least one point");
  for (const auto& p : points_)
    if (p.size() != dim_) throw DimensionError("point has wrong dimension");
  std::set<Point> seen(points_.begin(), points_.end());
  if (seen.size() != points_.size()) throw PreconditionError("points must be pairwise distinct");
}

PointConfig PointConfig::from_ints(std::size_t dim, const std::vector<std::vector<long>>& points) {
  std::vector<Point> pts;
  for (const auto& p : points) {
    Point q;
    for (long x : p) q.emplace_back(x);
    pts.push_back(std::move(q));
  }
  return PointConfig(dim, std::move(pts));
}

std::optional<std::size_t> PointConfig::origin_index() const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (is_zero(points_[i])) return i;
  return std::nullopt;
}

std::vector<IPoint> PointConfig::to_ipoints() const {
  std::vector<IPoint> out;
  out.reserve(points_.size());
  for (const auto& p : points_) {
    IPoint q;
    for (const auto& x : p) q.push_back(to_i64(x));
    out.push_back(std::move(q));
  }
  return out;
}

PointConfig PointConfig::sorted() const {
  auto pts = points_;
  std::sort(pts.begin(), pts.end(), lex_less);
  return PointConfig(dim_, std::move(pts), normalization_);
}

PointConfig normalize_config(const PointConfig& a, const std::optional<Point>& pivot) {
  const std::size_t d = a.dim();
  Point shift;
  if (pivot) {
    if (pivot->size() != d) throw DimensionError("pivot has wrong dimension");
    if (std::find(a.points().begin(), a.points().end(), *pivot) == a.points().end())
      throw PreconditionError("pivot is not a point of the configuration");
    shift = *pivot;
  } else {
    shift = *std::min_element(a.points().begin(), a.points().end(), lex_less);
  }

  std::vector<Point> translated;
  for (const auto& p : a.points()) {
    Point q(d);
    for (std::size_t i = 0; i < d; ++i) q[i] = p[i] - shift[i];
    translated.push_back(std::move(q));
  }
  LatticeBasis lb = lattice_basis(translated, d);
  const std::size_t reduced = lb.basis.size();
  Normalization step{shift, reduced ? IntMatrix::from_rows(lb.basis, d) : IntMatrix(0, d)};

  std::vector<Point> local;
  for (const auto& p : a.points()) {
    auto y = step.to_local(p);
    if (!y) throw InternalError("point not in its own generated lattice");
    local.push_back(std::move(*y));
  }

  // Compose with any earlier normalization so results map back to the input.
  const Normalization& prior = a.normalization();
  Normalization composed;
  composed.translation = prior.to_original(shift);
  composed.basis = IntMatrix(reduced, prior.basis.cols());
  for (std::size_t r = 0; r < reduced; ++r)
    for (std::size_t c = 0; c < prior.basis.cols(); ++c)
      for (std::size_t k = 0; k < d; ++k) composed.basis(r, c) += step.basis(r, k) * prior.basis(k, c);

  PointConfig out(reduced, std::move(local), std::move(composed));
  if (pivot && reduced > 0) {
    const auto origin = out.origin_index();
    if (!is_extremal(out, *origin)) throw PreconditionError("pivot is not an extremal point of the hull");
  }
  return out;
}

}  // namespace sumset

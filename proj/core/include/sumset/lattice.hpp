#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sumset/numeric.hpp"

namespace sumset {

using Point = std::vector<BigInt>;
using RationalVector = std::vector<Rational>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds a matrix whose rows are the given vectors (all of length `cols`).
  static IntMatrix from_rows(std::span<const Point> rows, std::size_t cols);
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::span<const Point> columns, std::size_t rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Point row(std::size_t r) const;
  Point column(std::size_t c) const;
  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Affine change of coordinates applied by normalize_config:
/// original = translation + sum_k local[k] * basis.row(k).
struct Normalization {
  Point translation;
  IntMatrix basis;  // d' x d, row echelon with positive pivots

  /// Local coordinates of an original-space point, or nullopt when the point
  /// is not in translation + lattice.
  std::optional<Point> to_local(const Point& original) const;
  Point to_original(const Point& local) const;
};

/// Ordered list of distinct lattice points in Z^d.
class PointConfig {
 public:
  PointConfig(std::size_t dim, std::vector<Point> points);
  PointConfig(std::size_t dim, std::vector<Point> points, Normalization normalization);

  /// Convenience for small literal configurations.
  static PointConfig from_ints(std::size_t dim, const std::vector<std::vector<long>>& points);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Normalization& normalization() const noexcept { return normalization_; }

  /// Index of the origin, if present.
  std::optional<std::size_t> origin_index() const;
  std::vector<IPoint> to_ipoints() const;

  /// Copy with points sorted lexicographically (normalization kept).
  PointConfig sorted() const;

 private:
  std::size_t dim_;
  std::vector<Point> points_;
  Normalization normalization_;
};

bool lex_less(const Point& a, const Point& b);

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Row-style Hermite normal form: nonzero rows of the result form an echelon
/// basis (positive pivots, entries above each pivot reduced into [0, pivot)).
IntMatrix hermite_normal_form(const IntMatrix& m);

struct LatticeBasis {
  std::vector<Point> basis;
  std::optional<BigInt> index;  // nullopt: lattice not full rank ("infinite")
};

LatticeBasis lattice_basis(std::span<const Point> vectors, std::size_t dim);

/// Basis of the integer kernel {z : m z = 0} (saturated lattice basis).
std::vector<Point> integer_kernel(const IntMatrix& m);

/// Basis of the rational nullspace of a rational matrix given by rows.
std::vector<RationalVector> rational_nullspace(const std::vector<RationalVector>& rows, std::size_t cols);

/// Solves sum_k y_k * columns[k] = target over Q; nullopt if inconsistent.
/// `columns` must be linearly independent.
std::optional<RationalVector> solve_in_span(const std::vector<RationalVector>& columns,
                                            const RationalVector& target);

/// Translate by -pivot (default: lexicographically least point, always a
/// vertex) and re-express in a basis of the generated lattice. The result has
/// 0 as an extremal point and generates Z^{d'} with d' = rank of A - A.
PointConfig normalize_config(const PointConfig& a, const std::optional<Point>& pivot = std::nullopt);

}  // namespace sumset

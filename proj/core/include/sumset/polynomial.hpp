#pragma once

#include <string>
#include <vector>

#include "sumset/numeric.hpp"

namespace sumset {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);

  /// The unique polynomial of degree < values.size() through
  /// (start + i, values[i]), via Newton forward differences.
  static RationalPolynomial interpolate_consecutive(const BigInt& start, const std::vector<BigInt>& values);

  /// binom(X + shift, k) as a polynomial in X.
  static RationalPolynomial shifted_binomial(const BigInt& shift, unsigned k);

  const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }
  /// Degree, with -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }

  Rational operator()(const Rational& x) const;

  RationalPolynomial& operator+=(const RationalPolynomial& other);
  RationalPolynomial operator*(const RationalPolynomial& other) const;
  RationalPolynomial operator*(const Rational& scalar) const;

  /// Renders like "5*X - 5", "1/2*X^2 + 3/2*X + 1", or "0".
  std::string to_string(const std::string& variable = "X") const;

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coefficients_ == b.coefficients_;
  }

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

}  // namespace sumset

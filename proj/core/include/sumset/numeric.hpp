#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sumset {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Coordinates used by the enumeration engines. Geometry stays in BigInt;
/// grids and semigroup descents convert through to_i64().
using IPoint = std::vector<std::int64_t>;

/// Converts to int64, throwing ResourceError when the value does not fit.
std::int64_t to_i64(const BigInt& value);

/// Canonical rendering: "p" for integers, "p/q" otherwise (q > 0, lowest terms).
std::string to_string(const BigInt& value);
std::string to_string(const Rational& value);

/// p/q in lowest terms (mpq_class(p, q) alone does not canonicalize).
Rational fraction(const BigInt& p, const BigInt& q);

BigInt ceil(const Rational& value);
BigInt floor(const Rational& value);
BigInt abs(const BigInt& value);
BigInt factorial(unsigned n);
BigInt pow(const BigInt& base, unsigned long exponent);

/// binom(n, k) with binom(n, k) = 0 whenever n < k (including negative n).
BigInt binomial_or_zero(const BigInt& n, unsigned k);

/// Hash for IPoint keys in unordered containers.
struct IPointHash {
  std::size_t operator()(const IPoint& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ p.size();
    for (auto x : p) {
      h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace sumset

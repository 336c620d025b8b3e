#include "sumset/numeric.hpp"

#include "sumset/errors.hpp"

namespace sumset {

std::int64_t to_i64(const BigInt& value) {
  if (!value.fits_slong_p()) {
    throw ResourceError("integer " + value.get_str() + " exceeds the 64-bit enumeration range");
  }
  return static_cast<std::int64_t>(value.get_si());
}

std::string to_string(const BigInt& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

Rational fraction(const BigInt& p, const BigInt& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

BigInt ceil(const Rational& value) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

BigInt floor(const Rational& value) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

BigInt abs(const BigInt& value) { return value < 0 ? BigInt(-value) : value; }

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt binomial_or_zero(const BigInt& n, unsigned k) {
  if (n < k) return 0;
  BigInt out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

}  // namespace sumset

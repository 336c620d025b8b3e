#include "sumset/polynomial.hpp"

#include <sstream>

namespace sumset {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  for (auto& c : coefficients_) c.canonicalize();
  trim();
}

void RationalPolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

RationalPolynomial RationalPolynomial::shifted_binomial(const BigInt& shift, unsigned k) {
  // prod_{j=0}^{k-1} (X + shift - j) / k!
  RationalPolynomial out({Rational(1)});
  for (unsigned j = 0; j < k; ++j) out = out * RationalPolynomial({Rational(shift - j), Rational(1)});
  return out * Rational(1, factorial(k));
}

RationalPolynomial RationalPolynomial::interpolate_consecutive(const BigInt& start, const std::vector<BigInt>& values) {
  // Forward differences at `start`, then sum_k diff_k * binom(X - start, k).
  std::vector<BigInt> diffs(values.begin(), values.end());
  std::vector<BigInt> leading;
  while (!diffs.empty()) {
    leading.push_back(diffs.front());
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
    diffs.pop_back();
  }
  RationalPolynomial out;
  for (unsigned k = 0; k < leading.size(); ++k) {
    if (leading[k] == 0) continue;
    out += shifted_binomial(BigInt(-start), k) * Rational(leading[k]);
  }
  return out;
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  acc.canonicalize();
  return acc;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) {
    coefficients_[i] += other.coefficients_[i];
    coefficients_[i].canonicalize();
  }
  trim();
  return *this;
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& other) const {
  if (coefficients_.empty() || other.coefficients_.empty()) return {};
  std::vector<Rational> out(coefficients_.size() + other.coefficients_.size() - 1);
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    for (std::size_t j = 0; j < other.coefficients_.size(); ++j) out[i + j] += coefficients_[i] * other.coefficients_[j];
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator*(const Rational& scalar) const {
  std::vector<Rational> out = coefficients_;
  for (auto& c : out) c *= scalar;
  return RationalPolynomial(std::move(out));
}

std::string RationalPolynomial::to_string(const std::string& variable) const {
  if (coefficients_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coefficients_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (k == 0) {
      os << sumset::to_string(mag);
      continue;
    }
    if (!unit) os << sumset::to_string(mag) << "*";
    os << variable;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

}  // namespace sumset

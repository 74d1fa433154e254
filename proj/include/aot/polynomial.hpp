#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "aot/rational.hpp"

namespace aot {

/// Univariate polynomial in t with arbitrary-precision integer coefficients.
/// coeffs()[k] is the coefficient of t^k; the leading coefficient is nonzero
/// unless the polynomial is zero, which is stored as an empty list.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial monomial(std::size_t degree, const BigInt& coeff = 1);
  /// (a + b t)
  static IntPolynomial linear(long a, long b);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Coefficient of t^k (zero beyond the degree).
  BigInt coeff(std::size_t k) const;
  BigInt evaluate(const BigInt& t) const;

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial& operator*=(const IntPolynomial& other);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  IntPolynomial pow(unsigned exponent) const;

  /// "1 + 6t + 13t^2", with "- " for negative coefficients; "0" for zero.
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

}  // namespace aot

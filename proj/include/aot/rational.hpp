#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace aot {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "num/den", or "num" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Parses "a" or "a/b"; throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

/// r mod p for an integer r; p < 2^32.
inline std::uint32_t mod_reduce(const BigInt& z, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p));
}

}  // namespace aot

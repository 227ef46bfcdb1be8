#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

namespace pcsp {

using BigInt = boost::multiprecision::mpz_int;
/// Always canonical: positive denominator, numerator and denominator coprime.
using BigRational = boost::multiprecision::mpq_rational;

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

/// Parses "num/den" or "num"; throws ValidationError on malformed text or a
/// zero denominator.
BigRational parse_rational(std::string_view text);
BigInt parse_integer(std::string_view text);

inline BigInt numerator_of(const BigRational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const BigRational& q) {
  return boost::multiprecision::denominator(q);
}

BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace pcsp

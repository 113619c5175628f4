#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace liftgap {

/// Exact fraction in lowest terms with positive denominator (GMP mpq).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", "p" or "-p/q". Input need not be reduced; the result is.
/// Throws ParseError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "p/q" in lowest terms, "p" for integers, sign on the
/// numerator.
std::string to_string(const Rational& r);

BigInt numerator_of(const Rational& r);
BigInt denominator_of(const Rational& r);

Rational pow2(int e);
BigInt binomial(std::int64_t n, std::int64_t k);
BigInt ipow(const BigInt& base, unsigned e);

/// Smallest integer p with p^k >= x (x >= 0).
BigInt ceil_kth_root(const BigInt& x, unsigned k);

/// r^k for small non-negative k.
Rational rpow(const Rational& r, unsigned k);

Rational abs(const Rational& r);

/// Least common multiple of all denominators.
BigInt common_denominator(const std::vector<Rational>& values);

double to_double(const Rational& r);

}  // namespace liftgap

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qqa {

// Arbitrary-precision integers and exact rationals. Rationals are kept
// canonical (reduced, positive denominator) by GMP.
using Integer = mpz_class;
using Rational = mpq_class;

// base^exp for nonnegative exp
Integer ipow(unsigned long base, unsigned long exp);
Integer ipow(const Integer& base, unsigned long exp);

// base^exp for signed exp; throws MathError on 0^negative
Rational rpow(const Rational& base, long exp);

Rational make_rational(const Integer& num, const Integer& den);

bool is_integer(const Rational& r);
// requires den == 1
Integer rational_to_integer(const Rational& r);

double to_double(const Rational& r);

// natural logarithm of a positive value, computed from mantissa/exponent so it
// stays accurate for operands with thousands of bits
double log_to_double(const Integer& n);
double log_to_double(const Rational& r);

// "p" when den == 1, otherwise "p/q"
std::string format_rational(const Rational& r);
// accepts "p", "p/q" and signs
Rational parse_rational(const std::string& s);

// number of base-q digits of n; 0 has length 0
unsigned digit_length(const Integer& n, unsigned base);

// SplitMix64 step, used to derive substream seeds
std::uint64_t mix64(std::uint64_t x);

} // namespace qqa

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ucs {

using Integer = mpz_class;
using Rational = mpq_class;

// Exact value of a decimal literal such as "0.1", "-2.5e-3" or "3/7".
// Throws RangeError on malformed input.
Rational parse_exact(std::string_view text);

// Exact rational of the shortest decimal that round-trips to `x`. Turns the
// double 0.1 into 1/10 rather than its binary expansion, so that thresholds
// such as (1/2 + delta) m compare exactly against integers.
Rational exact_decimal(double x);

// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Shortest round-trip decimal for a double; "inf"/"nan" spelled out.
std::string format_real(double x);

Integer binomial(std::uint64_t n, std::uint64_t k);

// Natural logarithm of a nonnegative integer without overflow; -inf for 0.
double log_of(const Integer& z);

// Smallest integer >= r and largest integer <= r.
Integer ceil_of(const Rational& r);
Integer floor_of(const Rational& r);

}  // namespace ucs

#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bratteli {

using Integer = mpz_class;
using Rational = mpq_class;

/// Always "p/q", with q >= 1 and the fraction in lowest terms ("0/1", "3/1").
std::string to_fraction_string(const Rational& value);

/// Accepts "p/q", "p", and optional leading sign. Throws Error on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Decimal digits with optional leading '-'.
Integer parse_integer(std::string_view text);

/// Renders a vector over its least common denominator, e.g. "(1/16,1/16,2/16)".
std::string format_common_denominator(std::span<const Rational> coords);

/// "(1/2,1/4)" with each entry reduced.
std::string format_reduced(std::span<const Rational> coords);

Rational abs(const Rational& value);
Integer lcm_of_denominators(std::span<const Rational> values);
Rational power(const Rational& base, unsigned long exponent);

}  // namespace bratteli

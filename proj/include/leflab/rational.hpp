#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace leflab {

/// Exact rational scalar. Every value handled by this library is kept in
/// canonical form (coprime numerator/denominator, positive denominator).
using Rational = mpq_class;

/// Builds a canonical rational from integers. Throws std::invalid_argument on
/// zero denominator.
Rational rat(long num, long den = 1);

/// Parses "p" or "p/q" (optional leading '-'). Throws std::invalid_argument on
/// malformed text or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical serialization: "p" or "p/q".
std::string to_string(const Rational& value);

/// Exact nonnegative square root, if the argument is a square of a rational.
std::optional<Rational> rational_sqrt(const Rational& value);

}  // namespace leflab

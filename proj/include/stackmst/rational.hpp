#ifndef STACKMST_RATIONAL_HPP
#define STACKMST_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stackmst {

/// Exact rational number. GMP keeps every result in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading '-'). Throws std::invalid_argument
/// on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms. The two-argument mpq_class constructor does not
/// reduce, so use this whenever the fraction may not be reduced already.
Rational make_rational(long num, long den);

/// Canonical rendering: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Nearest double, for human-facing convenience columns only.
double to_double(const Rational& value);

/// Exact conversion of a finite double.
Rational from_double(double value);

} // namespace stackmst

#endif // STACKMST_RATIONAL_HPP

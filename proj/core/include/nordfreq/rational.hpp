#ifndef NORDFREQ_RATIONAL_HPP
#define NORDFREQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace nordfreq {

// Exact arithmetic for money.  Monetary aggregation (costs, price pools,
// bootstrap means) is carried out in arbitrary-precision rationals so that
// totals are exact sums of their items and per-link shares of a flow sum
// exactly to the whole.  Doubles appear only at presentation boundaries.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses a plain decimal string ("54.06", "-0.5", "4740") into an exact
// rational.  Scientific notation and locale-dependent separators are
// rejected.  Throws ParseError on anything else.
Rational parse_decimal(const std::string& text);

// Exact rational representation of a finite double (every finite double is
// a dyadic rational).  Throws DomainError for NaN or infinities.
Rational rational_from_double(double value);

// Nearest-double projection, for presentation and plotting only.
double to_double(const Rational& value);

// Formats a rational with a fixed number of decimal places, rounding half
// away from zero.  Used for human-readable money ("1234.57").
std::string format_fixed(const Rational& value, int decimals);

} // namespace nordfreq

#endif // NORDFREQ_RATIONAL_HPP

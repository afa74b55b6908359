#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace qmatch {

// Exact rational arithmetic on top of GMP.  Values are kept canonical
// (lowest terms, positive denominator) by the backend.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Integer rational_num(const Rational& r) { return Integer(numerator(r)); }
inline Integer rational_den(const Rational& r) { return Integer(denominator(r)); }

// Renders "p/q" with q > 0, always including the denominator ("3/1").
std::string to_fraction_string(const Rational& r);

// Parses "p/q" or a plain integer "p".  Throws InputError on malformed
// input or a zero denominator.
Rational parse_rational(const std::string& text);

// Least common multiple of all denominators (1 for an empty list).
Integer denominator_lcm(const std::vector<Rational>& values);

}  // namespace qmatch

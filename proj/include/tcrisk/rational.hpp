#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace tcrisk {

/// Exact rational number with arbitrary-precision numerator and denominator.
/// All probability and position arithmetic in this library is exact; floating
/// point appears only in the entropic demo.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/**
 * Parses "num/den" or a plain integer string into a Rational.
 * Whitespace is not accepted; the denominator must be positive.
 * Throws std::invalid_argument on malformed input.
 */
Rational parse_rational(const std::string& text);

/// Canonical text form: lowest terms, "n" when the denominator is 1,
/// otherwise "n/d". parse_rational(format_rational(x)) == x.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace tcrisk

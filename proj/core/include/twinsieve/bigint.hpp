#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace twinsieve {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const BigInt& value);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

/// Parses the to_string() forms back. Throws std::invalid_argument.
BigInt parse_bigint(const std::string& text);
Rational parse_rational(const std::string& text);

/// Nearest double. Safe for numerators and denominators far beyond the
/// double exponent range.
double approx(const Rational& value);
double approx(const BigInt& value);

/// Natural log of a positive integer of any size.
double log_of(const BigInt& value);

/// Checked narrowing; throws CapacityError when the value does not fit.
std::uint64_t to_u64(const BigInt& value);

} // namespace twinsieve

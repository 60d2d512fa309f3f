#include "twinsieve/bigint.hpp"
#include "twinsieve/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace twinsieve {

namespace mp = boost::multiprecision;

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const Rational& value)
{
    const BigInt& den = mp::denominator(value);
    if (den == 1) {
        return mp::numerator(value).str();
    }
    return mp::numerator(value).str() + "/" + den.str();
}

BigInt parse_bigint(const std::string& text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty integer literal");
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        throw std::invalid_argument("bad integer literal: " + text);
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("bad integer literal: " + text);
        }
    }
    return BigInt(text);
}

Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_bigint(text));
    }
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator: " + text);
    }
    return Rational(num, den);
}

namespace {

// value = mantissa * 2^exponent with |mantissa| < 2^63.
std::pair<double, long> split(const BigInt& value)
{
    if (value == 0) {
        return {0.0, 0};
    }
    BigInt magnitude = mp::abs(value);
    long bits = static_cast<long>(mp::msb(magnitude)) + 1;
    long shift = bits > 62 ? bits - 62 : 0;
    BigInt top = magnitude >> shift;
    double mantissa = static_cast<double>(top.convert_to<std::uint64_t>());
    return {value < 0 ? -mantissa : mantissa, shift};
}

} // namespace

double approx(const BigInt& value)
{
    auto [mantissa, exponent] = split(value);
    return std::ldexp(mantissa, static_cast<int>(exponent));
}

double approx(const Rational& value)
{
    auto [num, num_exp] = split(mp::numerator(value));
    auto [den, den_exp] = split(mp::denominator(value));
    return std::ldexp(num / den, static_cast<int>(num_exp - den_exp));
}

double log_of(const BigInt& value)
{
    if (value <= 0) {
        throw DomainError("log_of: argument must be positive");
    }
    auto [mantissa, exponent] = split(value);
    return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

std::uint64_t to_u64(const BigInt& value)
{
    if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
        throw CapacityError("integer " + value.str() + " exceeds 64-bit range");
    }
    return value.convert_to<std::uint64_t>();
}

} // namespace twinsieve

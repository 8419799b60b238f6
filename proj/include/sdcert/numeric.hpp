#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sdcert {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using i128 = __int128;
using u128 = unsigned __int128;

/// Floor of the square root of a non-negative integer.
Integer isqrt(const Integer& n);
std::uint64_t isqrt(std::uint64_t n);
u128 isqrt(u128 n);

/// Smallest m with m*m >= n.
Integer ceil_sqrt(const Integer& n);

bool is_square(const Integer& n);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Floor division with a positive divisor, rounding toward negative infinity.
std::int64_t floor_div(std::int64_t a, std::int64_t b);

/// Parses "p", "p/q", or a decimal such as "0.125" or "1e6" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);
std::string to_string(const Integer& n);

/// Approximate value for rendering only; never used in a decision.
double to_double(const Rational& r);

/// Narrowing with a range check; throws std::overflow_error.
std::int64_t to_int64(const Integer& n);

/// Numerator and denominator as int64 when both fit.
bool fits_int64(const Rational& r);

Integer gcd(const Integer& a, const Integer& b);

/// gcd(a, b) = a*x + b*y.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);

/// True iff n is a sum of two integer squares (n >= 0).
bool is_sum_of_two_squares(std::uint64_t n);

}  // namespace sdcert

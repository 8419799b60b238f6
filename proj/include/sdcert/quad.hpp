#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>

#include "sdcert/numeric.hpp"

namespace sdcert {

/// An exact number a + b*sqrt(3) with rational a and b.
///
/// Rationals are kept in lowest terms by the underlying type, and since 1 and
/// sqrt(3) are linearly independent over the rationals, equality is
/// coefficient-wise.
class QuadValue {
 public:
  QuadValue() = default;
  QuadValue(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT
  QuadValue(std::int64_t a) : a_(a) {}                                           // NOLINT

  static QuadValue sqrt3() { return {0, 1}; }
  /// (3*sqrt(3) - 5) / 2, the seven-point tolerance.
  static QuadValue seven_point_eps() { return {Rational(-5, 2), Rational(3, 2)}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_rational() const { return b_ == 0; }

  QuadValue operator-() const { return {-a_, -b_}; }
  QuadValue& operator+=(const QuadValue& o);
  QuadValue& operator-=(const QuadValue& o);
  QuadValue& operator*=(const QuadValue& o);
  /// Throws std::domain_error on division by zero.
  QuadValue& operator/=(const QuadValue& o);

  friend QuadValue operator+(QuadValue l, const QuadValue& r) { return l += r; }
  friend QuadValue operator-(QuadValue l, const QuadValue& r) { return l -= r; }
  friend QuadValue operator*(QuadValue l, const QuadValue& r) { return l *= r; }
  friend QuadValue operator/(QuadValue l, const QuadValue& r) { return l /= r; }

  friend bool operator==(const QuadValue& l, const QuadValue& r) { return l.a_ == r.a_ && l.b_ == r.b_; }
  friend std::strong_ordering operator<=>(const QuadValue& l, const QuadValue& r);

  /// Conjugate a - b*sqrt(3).
  QuadValue conjugate() const { return {a_, -b_}; }

  /// For display only.
  double approx() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

std::ostream& operator<<(std::ostream& os, const QuadValue& v);

/// Sign of a + b*sqrt(3) decided with integer arithmetic.
int sign_quad(const QuadValue& v);

std::strong_ordering compare_quad(const QuadValue& u, const QuadValue& v);

QuadValue abs(const QuadValue& v);
Integer floor(const QuadValue& v);
Integer ceil(const QuadValue& v);

/// Fractional part {v} in [0, 1).
QuadValue frac(const QuadValue& v);

/// Distance from v to the nearest integer.
QuadValue dist_to_int(const QuadValue& v);

/// Circular distance between two points of R/Z.
QuadValue circle_dist(const QuadValue& u, const QuadValue& v);

/// m with m <= n*sqrt(3) < m + 1.
Integer floor_mul_sqrt3(const Integer& n);
std::int64_t floor_mul_sqrt3(std::int64_t n);

struct FracWitness {
  Integer n;
  Integer k;           ///< nearest integer to n*sqrt(3)
  QuadValue residual;  ///< n*sqrt(3) - k, strictly inside (-1/2, 1/2)
};

FracWitness dist_to_nearest(const Integer& n);

/// Sign of a + b*sqrt(3) for machine integers; exact for |a|, |b| < 2^63.
int sign_quad(i128 a, i128 b);

/// ||n*sqrt(3) + shift|| < eps (or <= eps when `inclusive`), with eps = p/q > 0
/// and shift = s/q over the same denominator. Overflow-checked; falls back to
/// the arbitrary-precision path when the fast path could overflow.
bool near_int_mul_sqrt3(std::int64_t n, std::int64_t shift_num, std::int64_t p, std::int64_t q, bool inclusive);

}  // namespace sdcert

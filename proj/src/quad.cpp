#include "sdcert/quad.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace sdcert {

QuadValue& QuadValue::operator+=(const QuadValue& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadValue& QuadValue::operator-=(const QuadValue& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadValue& QuadValue::operator*=(const QuadValue& o) {
  Rational a = a_ * o.a_ + 3 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadValue& QuadValue::operator/=(const QuadValue& o) {
  // norm a^2 - 3b^2 vanishes only at zero
  Rational norm = o.a_ * o.a_ - 3 * o.b_ * o.b_;
  if (norm == 0) throw std::domain_error("QuadValue division by zero");
  *this *= o.conjugate();
  a_ /= norm;
  b_ /= norm;
  return *this;
}

std::strong_ordering operator<=>(const QuadValue& l, const QuadValue& r) { return compare_quad(l, r); }

double QuadValue::approx() const { return to_double(a_) + to_double(b_) * std::sqrt(3.0); }

std::ostream& operator<<(std::ostream& os, const QuadValue& v) {
  return os << to_string(v.a()) << " + " << to_string(v.b()) << "*sqrt(3)";
}

namespace {

int sgn(const Rational& r) { return r.sign(); }

}  // namespace

int sign_quad(const QuadValue& v) {
  const int sa = sgn(v.a());
  const int sb = sgn(v.b());
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 3 b^2
  Rational lhs = v.a() * v.a();
  Rational rhs = 3 * v.b() * v.b();
  return lhs > rhs ? sa : sb;
}

std::strong_ordering compare_quad(const QuadValue& u, const QuadValue& v) {
  const int s = sign_quad(u - v);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadValue abs(const QuadValue& v) { return sign_quad(v) < 0 ? -v : v; }

Integer floor(const QuadValue& v) {
  if (v.is_rational()) return floor(v.a());
  // a + b*sqrt(3) = a + sign(b)*sqrt(3 b^2)
  Rational r = 3 * v.b() * v.b();
  // floor of sqrt(r) for rational r: floor(sqrt(p*q)/q)
  const Integer& p = boost::multiprecision::numerator(r);
  const Integer& q = boost::multiprecision::denominator(r);
  Integer s = isqrt(p * q);  // floor(sqrt(r) * q)
  Integer guess = floor(v.a() + (v.b() > 0 ? Rational(s, q) : Rational(-s - 1, q)));
  // guess is within one of the true floor; settle it exactly
  while (sign_quad(v - QuadValue(Rational(guess))) < 0) --guess;
  while (sign_quad(v - QuadValue(Rational(guess + 1))) >= 0) ++guess;
  return guess;
}

Integer ceil(const QuadValue& v) { return -floor(-v); }

QuadValue frac(const QuadValue& v) { return v - QuadValue(Rational(floor(v))); }

QuadValue dist_to_int(const QuadValue& v) {
  QuadValue f = frac(v);
  QuadValue g = QuadValue(1) - f;
  return compare_quad(f, g) <= 0 ? f : g;
}

QuadValue circle_dist(const QuadValue& u, const QuadValue& v) { return dist_to_int(u - v); }

Integer floor_mul_sqrt3(const Integer& n) {
  Integer r = isqrt(3 * n * n);
  if (n >= 0) return r;
  // -sqrt(3 n^2) is irrational for n != 0
  return -r - 1;
}

std::int64_t floor_mul_sqrt3(std::int64_t n) {
  if (n == 0) return 0;
  const u128 mag = n < 0 ? static_cast<u128>(-static_cast<i128>(n)) : static_cast<u128>(n);
  if (mag >= (static_cast<u128>(1) << 62)) return to_int64(floor_mul_sqrt3(Integer(n)));
  const auto r = static_cast<std::int64_t>(isqrt(3 * mag * mag));
  return n > 0 ? r : -r - 1;
}

FracWitness dist_to_nearest(const Integer& n) {
  Integer m = floor_mul_sqrt3(n);
  // n*sqrt(3) - m in [0, 1); exactly 1/2 is impossible
  QuadValue rel(Rational(-m), Rational(n));
  Integer k = sign_quad(rel - QuadValue(Rational(1, 2))) < 0 ? m : Integer(m + 1);
  return {n, k, QuadValue(Rational(-k), Rational(n))};
}

int sign_quad(i128 a, i128 b) {
  constexpr i128 lim = static_cast<i128>(1) << 63;
  if (a >= lim || a <= -lim || b >= lim || b <= -lim) {
    auto to_int = [](i128 v) {
      bool neg = v < 0;
      u128 m = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
      Integer r = static_cast<std::uint64_t>(m >> 64);
      r <<= 64;
      r += static_cast<std::uint64_t>(m);
      return neg ? Integer(-r) : r;
    };
    return sign_quad(QuadValue(Rational(to_int(a)), Rational(to_int(b))));
  }
  const int sa = (a > 0) - (a < 0);
  const int sb = (b > 0) - (b < 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const u128 ua = static_cast<u128>(a < 0 ? -a : a);
  const u128 ub = static_cast<u128>(b < 0 ? -b : b);
  return ua * ua > 3 * ub * ub ? sa : sb;
}

bool near_int_mul_sqrt3(std::int64_t n, std::int64_t shift_num, std::int64_t p, std::int64_t q, bool inclusive) {
  constexpr std::int64_t lim = std::int64_t{1} << 58;
  const i128 qn = static_cast<i128>(q) * n;
  if (qn >= lim || qn <= -lim || shift_num >= lim || shift_num <= -lim || p >= lim || q >= lim) {
    QuadValue v(Rational(shift_num, q), Rational(n));
    QuadValue d = dist_to_int(v);
    const int c = sign_quad(d - QuadValue(Rational(p, q)));
    return inclusive ? c <= 0 : c < 0;
  }
  // w = q*n*sqrt(3) + s; floor(w) from an integer square root
  std::int64_t fw;
  if (n == 0) {
    fw = shift_num;
  } else {
    const u128 m = static_cast<u128>(qn < 0 ? -qn : qn);
    const auto r = static_cast<std::int64_t>(isqrt(3 * m * m));
    fw = (qn > 0 ? r : -r - 1) + shift_num;
  }
  const std::int64_t m = floor_div(fw, q);  // floor(n*sqrt(3) + s/q)
  // lower side: n*sqrt(3) + s/q - m vs p/q
  const int lo = sign_quad(static_cast<i128>(q) * m + p - shift_num, -qn);
  // upper side: m + 1 - (n*sqrt(3) + s/q) vs p/q
  const int hi = sign_quad(static_cast<i128>(q) * (m + 1) - shift_num - p, -qn);
  // lo > 0  <=>  frac < p/q ; hi < 0 <=> 1 - frac < p/q
  if (inclusive) return lo >= 0 || hi <= 0;
  return lo > 0 || hi < 0;
}

}  // namespace sdcert

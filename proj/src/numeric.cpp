#include "sdcert/numeric.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace sdcert {

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

// The floating-point estimate only seeds the search; the result is fixed up
// with exact integer comparisons.
std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u128 isqrt(u128 n) {
  if (n <= UINT64_MAX) return isqrt(static_cast<std::uint64_t>(n));
  auto r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

Integer ceil_sqrt(const Integer& n) {
  Integer r = isqrt(n);
  if (r * r < n) ++r;
  return r;
}

bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  return r * r == n;
}

Integer floor(const Rational& r) {
  const Integer& p = boost::multiprecision::numerator(r);
  const Integer& q = boost::multiprecision::denominator(r);
  Integer f = p / q;  // truncates toward zero
  if (p < 0 && f * q != p) --f;
  return f;
}

Integer ceil(const Rational& r) { return -floor(-r); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer");
  Integer v{std::string(s)};
  return neg ? Integer(-v) : v;
}

Integer pow10(unsigned e) {
  Integer p = 1;
  for (unsigned i = 0; i < e; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Integer p = parse_integer(text.substr(0, slash));
      Integer q = parse_integer(text.substr(slash + 1));
      if (q == 0) throw std::invalid_argument("zero denominator");
      return Rational(p, q);
    }
    // decimal with optional exponent
    std::string_view mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mant = text.substr(0, e);
      Integer ev = parse_integer(text.substr(e + 1));
      if (ev > 1000 || ev < -1000) throw std::invalid_argument("exponent out of range");
      exp10 = static_cast<long>(ev);
    }
    bool neg = false;
    if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
      neg = mant.front() == '-';
      mant.remove_prefix(1);
    }
    std::string digits;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      std::string_view ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
      if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed decimal");
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
        throw std::invalid_argument("malformed decimal");
      digits = std::string(ip) + std::string(fp);
      exp10 -= static_cast<long>(fp.size());
    } else {
      if (!all_digits(mant)) throw std::invalid_argument("malformed number");
      digits = std::string(mant);
    }
    Rational v{Integer(digits)};
    if (exp10 >= 0)
      v *= pow10(static_cast<unsigned>(exp10));
    else
      v /= pow10(static_cast<unsigned>(-exp10));
    return neg ? Rational(-v) : v;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& r) {
  const Integer& q = boost::multiprecision::denominator(r);
  if (q == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + q.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::int64_t to_int64(const Integer& n) {
  if (n > INT64_MAX || n < INT64_MIN) throw std::overflow_error("integer exceeds int64: " + n.str());
  return n.convert_to<std::int64_t>();
}

bool fits_int64(const Rational& r) {
  const Integer& p = boost::multiprecision::numerator(r);
  const Integer& q = boost::multiprecision::denominator(r);
  return p <= INT64_MAX && p >= INT64_MIN && q <= INT64_MAX;
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t quo = old_r / r;
    std::int64_t tmp = old_r - quo * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quo * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quo * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

bool is_sum_of_two_squares(std::uint64_t n) {
  if (n == 0) return true;
  while (n % 2 == 0) n /= 2;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (p % 4 == 3 && (e % 2) == 1) return false;
  }
  return n % 4 != 3;
}

}  // namespace sdcert

#include "sdcert/witness.hpp"

#include <algorithm>
#include <cmath>

#include "sdcert/diophantine.hpp"

namespace sdcert {

namespace {

constexpr std::size_t kIdx3 = 0;

RadicalField reduction_field(const Rational& q) { return RadicalField({Rational(3), Rational(2), q}); }
RadicalField explicit_field(const Rational& q) { return RadicalField({Rational(3), Rational(5), q}); }

struct Window {
  Surd lo;
  Surd hi;
};

// bounds on 4(x^2 + y^2) = (2x)^2 + (2y)^2
Window reduction_window(const RadicalField& f, const Rational& eps) {
  const Surd d = f.root(2);
  const Surd lo = d + f.root(1) * eps;
  const Surd hi = d + f.value(2 * eps);
  return {lo * lo, hi * hi};
}

Window explicit_window(const RadicalField& f) {
  const Surd d = f.root(2);
  const Surd e = f.quad(QuadValue::seven_point_eps(), kIdx3);
  const Surd lo = d + f.root(1) * e * Rational(1, 2);
  const Surd hi = d + f.value(kExplicitDelta);
  return {lo * lo, hi * hi};
}

Surd reduction_bound(const RadicalField& f, const Rational& q, const Rational& eps) {
  const Surd r3 = f.root(0), r2 = f.root(1), d = f.root(2);
  return r3 * (q / 2) + (r3 * Rational(2) + r2) * d * eps + f.value(7 * eps * eps);
}

Surd explicit_bound(const RadicalField& f, const Rational& q, const Rational& y) {
  const Surd r3 = f.root(0), d = f.root(2);
  const Surd e = f.quad(QuadValue::seven_point_eps(), kIdx3);
  return r3 * (q / 2) + (r3 * kExplicitDelta + e * Rational(1, 2)) * d + e * (2 * y) + f.value(Rational(1, 50));
}

// |z - (a + b sqrt(3))/2| < p/den, exactly
bool within_fast(std::int64_t z, std::int64_t a, std::int64_t b, std::int64_t p, std::int64_t den) {
  const i128 c = static_cast<i128>(den) * (2 * static_cast<i128>(z) - a);
  const i128 d = -static_cast<i128>(den) * b;
  return sign_quad(c - 2 * static_cast<i128>(p), d) < 0 && sign_quad(c + 2 * static_cast<i128>(p), d) > 0;
}

bool within(std::int64_t z, std::int64_t a, std::int64_t b, const QuadValue& eps) {
  const QuadValue diff(Rational(z) - Rational(a, 2), Rational(-b, 2));
  return compare_quad(abs(diff), eps) < 0;
}

WitnessCertificate assemble(CertificateKind kind, const Rational& q, const QuadValue& eps, std::int64_t a,
                            std::int64_t b) {
  WitnessCertificate c;
  c.kind = kind;
  c.q = q;
  c.eps = eps;
  c.pair.x2 = a;
  c.pair.y2 = b;
  c.pair.norm_sq = Rational(Integer(a) * a + Integer(b) * b, 4);
  c.pair.eps = eps;
  c.z = nearest_half_sqrt3(a, -b);
  c.t = nearest_half_sqrt3(b, a);
  c.triangle = {{0, 0}, {a, b}, {c.z, c.t}};
  c.twice_area = twice_area(c.triangle);
  c.bound_rhs = certificate_bound(c).terms();
  return c;
}

bool near_half_pair(std::int64_t a, std::int64_t b, const Rational& eps) {
  const std::int64_t z = nearest_half_sqrt3(a, -b);
  const std::int64_t t = nearest_half_sqrt3(b, a);
  if (fits_int64(eps) && boost::multiprecision::denominator(eps) < (Integer(1) << 40)) {
    const auto p = static_cast<std::int64_t>(boost::multiprecision::numerator(eps));
    const auto den = static_cast<std::int64_t>(boost::multiprecision::denominator(eps));
    return within_fast(z, a, -b, p, den) && within_fast(t, b, a, p, den);
  }
  return within(z, a, -b, QuadValue(eps)) && within(t, b, a, QuadValue(eps));
}

struct RadiusRange {
  Integer lo;  // bounds on a^2 + b^2
  Integer hi;
};

RadiusRange radius_range(const Window& w) { return {ceil(w.lo), floor(w.hi)}; }

void require_reduction_inputs(const Rational& q, const Rational& eps) {
  if (q < 100) throw std::invalid_argument("q must be at least 100");
  if (eps <= 0 || eps >= Rational(1, 2)) throw std::invalid_argument("eps must lie in (0, 1/2)");
}

struct HalfPair {
  std::int64_t a;
  Rational y;
};

// Construction for the half-integer pair given sqrt(N) as an element of f.
HalfPair halfint_from_root(const RadicalField& f, const Surd& root_n) {
  const Integer top_a = floor(root_n * Rational(2));
  const Rational a = grid_point_from_top(Rational(top_a), Rational(0));
  const Integer a_int = boost::multiprecision::numerator(a);
  const bool odd = (dist_to_nearest(a_int).k & 1) != 0;
  const Rational x = a / 2;
  const Surd rest = root_n * root_n - f.value(x * x);
  if (sign(rest) < 0) throw std::logic_error("2x exceeds 2 sqrt(N)");
  Rational top_y;
  if (!odd) {
    top_y = Rational(floor_sqrt(rest) + 7);
  } else {
    const Integer s = floor_sqrt(rest * Rational(4));
    top_y = Rational((s + 1) / 2 + 6) + Rational(1, 2);
  }
  const Rational y = grid_point_from_top(top_y, -x);
  if (y < 0 || sign(f.value(y * y) - rest) < 0) throw std::logic_error("y fell below sqrt(N - x^2)");
  if (sign_minus_sqrt(f.value(y - 7), rest) > 0) throw std::logic_error("y exceeds sqrt(N - x^2) + 7");
  return {to_int64(a_int), y};
}

bool accept_tie(std::int64_t got, std::int64_t a, std::int64_t b) {
  if (got == nearest_half_sqrt3(a, b)) return true;
  // (a + b sqrt(3))/2 is a half-integer only when b = 0 and a is odd
  return b == 0 && (a & 1) != 0 && got == floor_div(a - 1, 2);
}

}  // namespace

std::string to_string(CertificateKind k) { return k == CertificateKind::Reduction ? "reduction" : "explicit"; }

CertificateKind certificate_kind_from_string(const std::string& s) {
  if (s == "reduction") return CertificateKind::Reduction;
  if (s == "explicit") return CertificateKind::Explicit;
  throw VerificationError("unknown certificate kind: " + s);
}

std::int64_t nearest_half_sqrt3(std::int64_t a, std::int64_t b) {
  return floor_div(a + 1 + floor_mul_sqrt3(b), 2);
}

PairWitness find_pair(const Rational& n, const Rational& eps) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  const Integer x = largest_below(isqrt(floor(n)), eps).s;
  const Rational rest = n - Rational(x * x);
  const Integer y_start = rest <= 0 ? Integer(0) : ceil_sqrt(ceil(rest));
  const Integer y = smallest_above(y_start, eps).s;
  PairWitness p;
  p.x2 = to_int64(2 * x);
  p.y2 = to_int64(2 * y);
  p.norm_sq = Rational(x * x + y * y);
  p.eps = QuadValue(eps);
  p.slack = p.norm_sq - n;
  return p;
}

std::optional<WitnessCertificate> build_witness(const Rational& q, const Rational& eps) {
  require_reduction_inputs(q, eps);
  const RadicalField f = reduction_field(q);
  const RadiusRange rr = radius_range(reduction_window(f, eps));
  // a = 2x, b = 2y, so x^2 + y^2 lies in [ceil(lo/4), floor(hi/4)]
  const Integer r_lo = (rr.lo + 3) / 4;
  const Integer r_hi = rr.hi / 4;
  if (r_lo > r_hi) return std::nullopt;
  const std::int64_t lo = to_int64(r_lo), hi = to_int64(r_hi);
  const auto x_max = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(hi)));
  for (std::int64_t x = 0; x <= x_max; ++x) {
    if (!near_multiple(x, eps)) continue;
    const std::int64_t rest_lo = lo - x * x, rest_hi = hi - x * x;
    const std::int64_t y_lo =
        rest_lo <= 0 ? 0 : static_cast<std::int64_t>(to_int64(ceil_sqrt(Integer(rest_lo))));
    const auto y_hi = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest_hi)));
    for (std::int64_t y = y_lo; y <= y_hi; ++y) {
      if (!near_multiple(y, eps)) continue;
      WitnessCertificate c = assemble(CertificateKind::Reduction, q, QuadValue(eps), 2 * x, 2 * y);
      const CertificateCheck chk = check_certificate(c);
      if (!chk.ok) throw std::logic_error("constructed certificate failed check " + chk.failed);
      return c;
    }
  }
  return std::nullopt;
}

std::optional<WitnessCertificate> build_witness_half(const Rational& q, const Rational& eps) {
  require_reduction_inputs(q, eps);
  const RadicalField f = reduction_field(q);
  const RadiusRange rr = radius_range(reduction_window(f, eps));
  if (rr.lo > rr.hi) return std::nullopt;
  const std::int64_t lo = to_int64(rr.lo), hi = to_int64(rr.hi);
  const auto a_max = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(hi)));
  bool found = false;
  std::int64_t best_area = 0, best_a = 0, best_b = 0;
  for (std::int64_t a = 0; a <= a_max; ++a) {
    const std::int64_t rest_lo = lo - a * a, rest_hi = hi - a * a;
    const std::int64_t b_lo = rest_lo <= 0 ? 0 : to_int64(ceil_sqrt(Integer(rest_lo)));
    const auto b_hi = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest_hi)));
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
      if (!near_half_pair(a, b, eps)) continue;
      const std::int64_t z = nearest_half_sqrt3(a, -b), t = nearest_half_sqrt3(b, a);
      std::int64_t area = a * t - b * z;
      if (area < 0) area = -area;
      if (!found || area < best_area) {
        found = true;
        best_area = area;
        best_a = a;
        best_b = b;
      }
    }
  }
  if (!found) return std::nullopt;
  WitnessCertificate c = assemble(CertificateKind::Reduction, q, QuadValue(eps), best_a, best_b);
  const CertificateCheck chk = check_certificate(c);
  if (!chk.ok) throw std::logic_error("constructed certificate failed check " + chk.failed);
  return c;
}

PairWitness find_halfint_pair(const Rational& n) {
  if (n <= 1000) throw std::invalid_argument("N must exceed 1000");
  const RadicalField f({Rational(3), n});
  const HalfPair hp = halfint_from_root(f, f.root(1));
  PairWitness p;
  p.x2 = hp.a;
  p.y2 = to_int64(boost::multiprecision::numerator(Rational(hp.y * 2)));
  p.norm_sq = Rational(hp.a, 2) * Rational(hp.a, 2) + hp.y * hp.y;
  p.eps = QuadValue::seven_point_eps();
  p.slack = p.norm_sq - n;
  if (*p.slack < 0) throw std::logic_error("half-integer pair below N");
  const QuadValue e = QuadValue::seven_point_eps();
  const QuadValue d1 = dist_to_int(QuadValue(p.x(), -p.y()));
  const QuadValue d2 = dist_to_int(QuadValue(p.y(), p.x()));
  if (compare_quad(d1, e) >= 0 || compare_quad(d2 * QuadValue(2), e) >= 0)
    throw std::logic_error("half-integer pair misses its tolerance");
  return p;
}

bool halfint_pair_within_reach(const Rational& n, const PairWitness& p) {
  const RadicalField f({n});
  const Surd inner = f.root(0) * Rational(7) - f.value(Rational(49, 4));
  const Rational slack = p.norm_sq - n;
  const bool reach = sign_minus_sqrt(f.value((slack - 49) / 14), inner) <= 0;
  const bool y_ok = sign_minus_sqrt(f.value(p.y() - 7), inner) <= 0;
  return slack >= 0 && reach && y_ok;
}

std::optional<WitnessCertificate> build_witness_explicit(const Rational& q) {
  if (q <= 1'000'000) throw std::invalid_argument("q must exceed 10^6");
  const RadicalField f = explicit_field(q);
  const Surd e = f.quad(QuadValue::seven_point_eps(), kIdx3);
  const Surd root_n = (f.root(2) + f.root(1) * e * Rational(1, 2)) * Rational(1, 2);
  const HalfPair hp = halfint_from_root(f, root_n);
  const std::int64_t b = to_int64(boost::multiprecision::numerator(Rational(hp.y * 2)));
  WitnessCertificate c = assemble(CertificateKind::Explicit, q, QuadValue::seven_point_eps(), hp.a, b);
  if (!check_certificate(c).ok) return std::nullopt;
  return c;
}

bool explicit_feasible(const Rational& q) {
  const RadicalField f = explicit_field(q);
  const Surd e = f.quad(QuadValue::seven_point_eps(), kIdx3);
  const Surd root_n = (f.root(2) + f.root(1) * e * Rational(1, 2)) * Rational(1, 2);
  const Surd reach = (f.root(2) + f.value(kExplicitDelta)) * (f.root(2) + f.value(kExplicitDelta)) * Rational(1, 4);
  const Surd room = reach - root_n * root_n;
  return sign_minus_sqrt((room - Rational(49)) * Rational(1, 14), root_n * Rational(7) - Rational(49, 4)) >= 0;
}

Rational best_bound_eps(const Rational& q, int j) {
  const double base = std::pow(to_double(q), -0.1) / 16.0 * std::ldexp(1.0, j);
  const double scaled = std::floor(base * 1e6);
  if (scaled >= 490000.0) return Rational(49, 100);
  const long long num = std::max(1LL, static_cast<long long>(scaled));
  return Rational(num, 1000000);
}

BestBound best_bound(const Rational& q) {
  if (q < 100) throw std::invalid_argument("q must be at least 100");
  for (int j = 0; j < 64; ++j) {
    const Rational eps = best_bound_eps(q, j);
    if (auto c = build_witness_half(q, eps)) return {std::move(*c), j + 1};
    if (eps == Rational(49, 100)) break;
  }
  throw SearchCapExceeded("no certificate up to eps = 49/100");
}

Surd certificate_bound(const WitnessCertificate& cert) {
  if (cert.kind == CertificateKind::Reduction) {
    if (!cert.eps.is_rational()) throw VerificationError("reduction certificate needs a rational eps");
    return reduction_bound(reduction_field(cert.q), cert.q, cert.eps.a());
  }
  return explicit_bound(explicit_field(cert.q), cert.q, cert.pair.y());
}

CertificateCheck check_certificate(const WitnessCertificate& c) {
  if (c.q <= 0) throw VerificationError("q must be positive");
  if (sign_quad(c.eps) <= 0) throw VerificationError("eps must be positive");
  try {
    check_coordinates(c.triangle);
  } catch (const std::out_of_range& e) {
    throw VerificationError(e.what());
  }
  auto fail = [](const char* name) { return CertificateCheck{false, name}; };
  const bool reduction = c.kind == CertificateKind::Reduction;

  if (reduction ? c.q < 100 : c.q <= 1'000'000) return fail("q_range");
  if (reduction) {
    if (!c.eps.is_rational() || c.eps.a() >= Rational(1, 2)) return fail("eps_range");
  } else if (c.eps != QuadValue::seven_point_eps()) {
    return fail("eps_range");
  }
  if (c.pair.eps != c.eps) return fail("pair_eps");
  const LatticeTriangle expect{{0, 0}, {c.pair.x2, c.pair.y2}, {c.z, c.t}};
  if (c.triangle != expect) return fail("triangle_shape");
  if (c.pair.norm_sq != Rational(Integer(c.pair.x2) * c.pair.x2 + Integer(c.pair.y2) * c.pair.y2, 4))
    return fail("norm_sq");
  if (!accept_tie(c.z, c.pair.x2, -c.pair.y2)) return fail("z_nearest");
  if (!accept_tie(c.t, c.pair.y2, c.pair.x2)) return fail("t_nearest");
  if (!within(c.z, c.pair.x2, -c.pair.y2, c.eps)) return fail("cond1");
  const QuadValue eps_t = reduction ? c.eps : c.eps * QuadValue(Rational(1, 2));
  if (!within(c.t, c.pair.y2, c.pair.x2, eps_t)) return fail("cond2");

  const RadicalField f = reduction ? reduction_field(c.q) : explicit_field(c.q);
  const Window w = reduction ? reduction_window(f, c.eps.a()) : explicit_window(f);
  const Surd four_r = f.value(4 * c.pair.norm_sq);
  if (sign(four_r - w.lo) < 0) return fail("cond3_lower");
  if (sign(w.hi - four_r) < 0) return fail("cond3_upper");

  const i128 det = static_cast<i128>(c.pair.x2) * c.t - static_cast<i128>(c.pair.y2) * c.z;
  const i128 area = det < 0 ? -det : det;
  if (area != c.twice_area || twice_area(c.triangle) != c.twice_area) return fail("twice_area");
  if (c.twice_area == 0) return fail("nondegenerate");
  if (!in_T(c.triangle, c.q)) return fail("in_T");

  const Surd bound = certificate_bound(c);
  if (bound.terms() != c.bound_rhs) return fail("bound_rhs");
  if (sign(bound - Rational(c.twice_area)) < 0) return fail("bound");
  return {};
}

bool verify_certificate(const WitnessCertificate& cert) { return check_certificate(cert).ok; }

int compare_small_d_bound(const Integer& twice_area, const Rational& q) {
  if (q <= 0) throw std::invalid_argument("q must be positive");
  // sign(6(b+1) - sqrt(3)(3q + sqrt(q))) with both sides squared
  const Rational b1 = Rational(twice_area + 1);
  if (b1 <= 0) return -1;
  const Rational m = 36 * b1 * b1 - 27 * q * q - 3 * q;
  if (m <= 0) return -1;
  const Rational diff = m * m - 324 * q * q * q;
  return diff.sign();
}

int compare_main_term(const Integer& twice_area, const Rational& q) {
  return sign_quad(QuadValue(Rational(2 * twice_area), -q));
}

}  // namespace sdcert

#include "sdcert/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sdcert/diophantine.hpp"
#include "sdcert/witness.hpp"

namespace sdcert {

namespace {

constexpr std::int64_t kMaxOracleQ = 1'000'000'000;

std::int64_t ceil_q(const Rational& q) {
  if (q < 1) throw std::invalid_argument("q must be at least 1");
  const Integer c = ceil(q);
  if (c > kMaxOracleQ) throw std::invalid_argument("q is beyond the oracle's range");
  return to_int64(c);
}

// smallest c >= 0 with 4 c^2 >= m
std::int64_t half_ceil_sqrt(i128 m) {
  if (m <= 0) return 0;
  const auto r = static_cast<std::int64_t>(isqrt(static_cast<u128>(m)));
  std::int64_t c = r / 2;
  while (static_cast<i128>(4) * c * c < m) ++c;
  return c;
}

i128 floor_div128(i128 a, i128 b) {
  i128 d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

i128 ceil_div128(i128 a, i128 b) { return -floor_div128(-a, b); }

i128 norm128(i128 x, i128 y) { return x * x + y * y; }

struct Search {
  std::int64_t q;
  std::int64_t best;
  std::vector<LatticeTriangle> found;
  std::uint64_t work = 0;
  std::uint64_t budget;

  i128 v_max() const { return static_cast<i128>(4) * best * best / q; }

  void accept(std::int64_t c, const LatticeTriangle& tri) {
    if (c < best) {
      best = c;
      found.clear();
    }
    found.push_back(canonical_form(tri));
  }

  // all apexes w with cross(v, w) = +-c over the base (0,0)-(vx,vy)
  bool scan(std::int64_t vx, std::int64_t vy, std::int64_t c, std::int64_t g, std::int64_t alpha,
            std::int64_t beta) {
    const i128 big_v = norm128(vx, vy);
    const std::int64_t sx = vx / g, sy = vy / g;
    bool hit = false;
    for (int sgn : {1, -1}) {
      const i128 cc = static_cast<i128>(sgn) * (c / g);
      const i128 w0x = -beta * cc, w0y = alpha * cc;
      const i128 d0 = w0x * vx + w0y * vy;
      // 0 <= d0 + k V/g <= V
      const i128 k_lo = ceil_div128(-d0 * g, big_v);
      const i128 k_hi = floor_div128((big_v - d0) * g, big_v);
      for (i128 k = k_lo; k <= k_hi; ++k) {
        const i128 wx = w0x + k * sx, wy = w0y + k * sy;
        const i128 a = norm128(wx, wy), b = norm128(wx - vx, wy - vy);
        if (a < q || b < q || a > big_v || b > big_v || a + b < big_v) continue;
        const LatticeTriangle tri{{0, 0}, {vx, vy}, {static_cast<std::int64_t>(wx), static_cast<std::int64_t>(wy)}};
        accept(c, tri);
        hit = true;
      }
    }
    return hit;
  }
};

std::vector<LatticeTriangle> sorted_unique(std::vector<LatticeTriangle> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<std::int64_t> critical_values(std::int64_t q_max) {
  if (q_max < 1) throw std::invalid_argument("q_max must be at least 1");
  std::vector<char> hit(static_cast<std::size_t>(q_max) + 1, 0);
  for (std::int64_t x = 0; x * x <= q_max; ++x)
    for (std::int64_t y = x; x * x + y * y <= q_max; ++y) hit[static_cast<std::size_t>(x * x + y * y)] = 1;
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= q_max; ++n)
    if (hit[static_cast<std::size_t>(n)]) out.push_back(n);
  return out;
}

SValue exact_S(const Rational& q, std::uint64_t budget) {
  const std::int64_t big_q = ceil_q(q);
  const std::int64_t n = to_int64(ceil_sqrt(Integer(big_q)));
  Search st{big_q, n * n, {}, 0, budget};
  if (big_q >= 100) st.best = std::min(st.best, best_bound(Rational(big_q)).cert.twice_area);

  // 4 c^2 >= 3 Q^2
  const std::int64_t c_floor = half_ceil_sqrt(static_cast<i128>(3) * big_q * big_q);
  const auto vx_max = static_cast<std::int64_t>(isqrt(static_cast<u128>(st.v_max())));
  for (std::int64_t vx = 1; vx <= vx_max; ++vx) {
    for (std::int64_t vy = 0; vy <= vx; ++vy) {
      const i128 big_v = norm128(vx, vy);
      if (big_v > st.v_max()) break;
      if (big_v < big_q) continue;
      std::int64_t alpha = 0, beta = 0;
      const std::int64_t g = ext_gcd(vx, vy, alpha, beta);
      const std::int64_t c_lo = std::max(c_floor, half_ceil_sqrt(4 * big_v * big_q - big_v * big_v));
      for (std::int64_t c = c_lo; c <= st.best; ++c) {
        if (c % g != 0) continue;
        if (++st.work > st.budget) throw BudgetExceeded(st.best, "oracle budget exceeded");
        if (st.scan(vx, vy, c, g, alpha, beta)) break;
      }
    }
  }
  SValue out;
  out.q = q;
  out.s = st.best;
  out.m_triangles = sorted_unique(std::move(st.found));
  if (out.m_triangles.empty()) throw std::logic_error("enumeration lost the seed triangle");
  for (const auto& t : out.m_triangles) {
    if (twice_area(t) != out.s || !in_T(t, Rational(big_q))) throw std::logic_error("oracle produced an invalid M-triangle");
  }
  return out;
}

SValue exact_S_naive(const Rational& q) {
  const std::int64_t big_q = ceil_q(q);
  const std::int64_t r = to_int64(ceil_sqrt(Integer(12 * big_q)));
  std::vector<LatticePoint> pts;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y)
      if (x * x + y * y >= big_q) pts.push_back({x, y});
  std::int64_t best = -1;
  std::vector<LatticeTriangle> found;
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      const std::int64_t t = cross(a, b);
      if (t <= 0 || (best >= 0 && t > best)) continue;
      const LatticeTriangle tri{{0, 0}, a, b};
      if (!in_T(tri, Rational(big_q))) continue;
      if (best < 0 || t < best) {
        best = t;
        found.clear();
      }
      found.push_back(canonical_form(tri));
    }
  }
  if (best < 0) throw std::logic_error("naive box contains no admissible triangle");
  return {q, best, sorted_unique(std::move(found))};
}

SlidingReport detect_sliding(const Rational& q) { return detect_sliding(exact_S(q)); }

SlidingReport detect_sliding(const SValue& sv) {
  std::map<LatticePoint, std::set<LatticePoint>> by_base;
  for (const auto& tri : sv.m_triangles) {
    for (int k = 0; k < 8; ++k) {
      const auto v = tri.vertices();
      const std::array<LatticePoint, 3> img{apply_symmetry(k, v[0]), apply_symmetry(k, v[1]), apply_symmetry(k, v[2])};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          const LatticePoint o = img[i];
          const LatticePoint w = img[j] - o;
          const LatticePoint a = img[3 - i - j] - o;
          if (cross(w, a) > 0) by_base[w].insert(a);
        }
      }
    }
  }
  auto rank = [](const LatticePoint& p) {
    return std::make_tuple(norm_sq(p), (p.x > 0 && p.y >= 0) ? 0 : 1, p.x, p.y);
  };
  std::optional<LatticePoint> chosen;
  for (const auto& [w, apexes] : by_base) {
    if (apexes.size() < 2) continue;
    if (!chosen || rank(w) < rank(*chosen)) chosen = w;
  }
  SlidingReport rep;
  rep.q = sv.q;
  rep.s = sv.s;
  if (!chosen) return rep;
  rep.slides = true;
  const auto& apexes = by_base[*chosen];
  auto it = apexes.begin();
  const LatticePoint a = *it++;
  const LatticePoint b = *it;
  rep.witness = SlidingWitness{{0, 0}, *chosen, a, b};
  rep.bound_ok = check_sliding_bound(rep);
  return rep;
}

bool check_sliding_bound(const SlidingReport& report) {
  if (!report.slides || !report.witness) throw std::invalid_argument("report does not slide");
  const Rational& q = report.q;
  bool ok = compare_small_d_bound(Integer(report.s), q) > 0;

  SlidingWitness w = *report.witness;
  if (cross(w.w - w.o, w.a - w.o) <= 0 || cross(w.w - w.o, w.b - w.o) <= 0 || w.a == w.b)
    throw std::invalid_argument("apexes are not strictly on the same side");
  const LatticeTriangle ta{w.o, w.w, w.a}, tb{w.o, w.w, w.b};
  if (twice_area(ta) != report.s || twice_area(tb) != report.s) return false;
  if (!in_T(ta, q) || !in_T(tb, q)) return false;
  if (dot(w.b - w.a, w.w - w.o) < 0) std::swap(w.a, w.b);
  const TrapezoidSums sums = trapezoid_sum_check(w.o, w.a, w.b, w.w);
  ok = ok && QuadValue(Rational(sums.lhs)) == sums.rhs;
  const Rational m(std::max(norm_sq(w.b - w.o), norm_sq(w.w - w.a)));
  const Rational excess = m - q;
  ok = ok && excess >= 0 && excess * excess >= q;
  return ok;
}

bool check_sliding_bound(const Rational& q) { return check_sliding_bound(detect_sliding(q)); }

}  // namespace sdcert

#include "sdcert/diophantine.hpp"

#include <algorithm>
#include <optional>

namespace sdcert {

namespace {

const QuadValue kSqrt3 = QuadValue::sqrt3();

QuadValue frac_of_multiple(const Integer& s) { return frac(QuadValue(Rational(0), Rational(s))); }

bool in_closed(const QuadValue& v, const Rational& lo, const Rational& hi) {
  return compare_quad(v, QuadValue(lo)) >= 0 && compare_quad(v, QuadValue(hi)) <= 0;
}

// Smallest m >= 0 with {m*alpha} in [lo, lo + w] on the circle, for
// 0 < alpha < 1, 0 <= lo < 1 and 0 < w. If the window is missed at m = 0,
// a hit needs an integer in [(m+lo)/alpha, (m+lo+w)/alpha] for some m >= 0,
// which is again a window condition for the rotation by {-1/alpha}.
Integer rotation_descent(const QuadValue& alpha, const QuadValue& lo, const QuadValue& w, int depth) {
  if (depth > 4000) throw SearchCapExceeded("rotation descent did not terminate");
  if (sign_quad(lo) == 0 || compare_quad(lo + w, QuadValue(1)) >= 0) return 0;
  const QuadValue beta = QuadValue(1) / alpha;
  const QuadValue big_w = w * beta;
  if (compare_quad(big_w, QuadValue(1)) >= 0) return ceil(lo * beta);
  const QuadValue gamma = frac(-beta);
  const QuadValue c = frac(-(lo * beta));
  const Integer m = rotation_descent(gamma, frac(-c), big_w, depth + 1);
  return ceil((lo + QuadValue(Rational(m))) * beta);
}

}  // namespace

std::vector<PellSolution> pell_stream(std::size_t count) {
  std::vector<PellSolution> out;
  out.reserve(count);
  Integer v = 1, u = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (3 * v * v - 2 != u * u) throw std::logic_error("Pell recurrence produced a non-solution");
    out.push_back({v, u});
    Integer nu = 2 * u + 3 * v;
    Integer nv = u + 2 * v;
    u = std::move(nu);
    v = std::move(nv);
  }
  return out;
}

bool frac_lower_bound_check(const PellSolution& sol) {
  if (sol.v <= 0 || 3 * sol.v * sol.v - 2 != sol.u * sol.u) throw std::invalid_argument("not a Pell solution");
  return compare_quad(frac_of_multiple(sol.v), QuadValue(Rational(1, 3 * sol.v))) > 0;
}

WindowWitness min_multiplier_in_window(const Rational& lo, const Rational& hi) {
  if (lo < 0 || hi > 1 || lo >= hi) throw std::invalid_argument("window must satisfy 0 <= lo < hi <= 1");
  const QuadValue alpha = kSqrt3 - QuadValue(1);
  // shift by one step so that the descent's s = 0 corresponds to s = 1
  const QuadValue start = frac(QuadValue(lo) - alpha);
  const Integer s = rotation_descent(alpha, start, QuadValue(hi - lo), 0) + 1;
  const QuadValue f = frac_of_multiple(s);
  if (!in_closed(f, lo, hi)) throw std::logic_error("rotation descent returned a point outside the window");
  return {s, f};
}

WindowWitness min_multiplier_in_window_scan(const Rational& lo, const Rational& hi, std::uint64_t cap) {
  if (lo < 0 || hi > 1 || lo >= hi) throw std::invalid_argument("window must satisfy 0 <= lo < hi <= 1");
  for (std::uint64_t s = 1; s <= cap; ++s) {
    const QuadValue f = frac_of_multiple(Integer(s));
    if (in_closed(f, lo, hi)) return {Integer(s), f};
  }
  throw SearchCapExceeded("no multiplier found below the search cap");
}

bool near_multiple(std::int64_t n, const Rational& eps) {
  if (fits_int64(eps)) {
    const auto p = static_cast<std::int64_t>(boost::multiprecision::numerator(eps));
    const auto q = static_cast<std::int64_t>(boost::multiprecision::denominator(eps));
    return near_int_mul_sqrt3(n, 0, p, q, false);
  }
  return near_multiple(Integer(n), eps);
}

bool near_multiple(const Integer& n, const Rational& eps) {
  if (n >= INT64_MIN / 4 && n <= INT64_MAX / 4 && fits_int64(eps)) return near_multiple(to_int64(n), eps);
  return compare_quad(abs(dist_to_nearest(n).residual), QuadValue(eps)) < 0;
}

WindowWitness largest_below(const Integer& n, const Rational& eps, std::uint64_t cap) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  if (n <= 0) return {Integer(0), QuadValue(0)};
  Integer k = n;
  for (std::uint64_t i = 0; i <= cap; ++i, --k) {
    if (near_multiple(k, eps)) return {k, frac_of_multiple(k)};
  }
  throw SearchCapExceeded("largest_below exceeded its search cap");
}

WindowWitness smallest_above(const Integer& n, const Rational& eps, std::uint64_t cap) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  Integer k = n;
  for (std::uint64_t i = 0; i <= cap; ++i, ++k) {
    if (near_multiple(k, eps)) return {k, frac_of_multiple(k)};
  }
  throw SearchCapExceeded("smallest_above exceeded its search cap");
}

std::string to_string(Grid g) {
  switch (g) {
    case Grid::Integers: return "integers";
    case Grid::HalfIntegers: return "half-integers";
    case Grid::OddHalves: return "odd-halves";
  }
  return "integers";
}

Grid grid_from_string(const std::string& s) {
  if (s == "integers") return Grid::Integers;
  if (s == "half-integers") return Grid::HalfIntegers;
  if (s == "odd-halves") return Grid::OddHalves;
  throw std::invalid_argument("unknown grid: " + s);
}

Rational grid_point_from_top(const Rational& top, const Rational& shift) {
  const QuadValue eps = QuadValue::seven_point_eps();
  std::optional<QuadValue> best_d;
  Rational best;
  for (int s = 0; s <= 6; ++s) {
    const Rational g = top - s;
    const QuadValue d = dist_to_int(QuadValue(shift, g));
    if (!best_d || compare_quad(d, *best_d) < 0) {
      best_d = d;
      best = g;
    }
  }
  if (compare_quad(*best_d, eps) > 0) throw std::logic_error("seven-point gap bound violated");
  return best;
}

Rational grid_point_in_segment(const Rational& j_lo, const Rational& j_hi, const Rational& shift, Grid grid) {
  if (j_hi - j_lo < 7) throw std::invalid_argument("segment shorter than 7");
  Rational top;
  switch (grid) {
    case Grid::Integers: top = Rational(floor(j_hi)); break;
    case Grid::HalfIntegers: top = Rational(floor(2 * j_hi), 2); break;
    case Grid::OddHalves: top = Rational(floor(j_hi - Rational(1, 2))) + Rational(1, 2); break;
  }
  const Rational g = grid_point_from_top(top, shift);
  if (g < j_lo || g > j_hi) throw std::logic_error("grid point left the segment");
  if (compare_quad(dist_to_int(QuadValue(shift, g)), QuadValue::seven_point_eps()) > 0)
    throw std::logic_error("grid point misses the tolerance");
  return g;
}

std::vector<QuadValue> seven_points_sorted() {
  std::vector<QuadValue> pts;
  for (int s = 0; s <= 6; ++s) pts.push_back(frac_of_multiple(Integer(s)));
  std::sort(pts.begin(), pts.end(), [](const QuadValue& a, const QuadValue& b) { return compare_quad(a, b) < 0; });
  return pts;
}

QuadValue seven_gap() {
  const auto pts = seven_points_sorted();
  QuadValue best = QuadValue(1) + pts.front() - pts.back();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const QuadValue g = pts[i] - pts[i - 1];
    if (compare_quad(g, best) > 0) best = g;
  }
  return best;
}

}  // namespace sdcert

#include "sdcert/lattice.hpp"

#include <algorithm>

namespace sdcert {

namespace {

void check_point(LatticePoint p) {
  if (p.x > kCoordLimit || p.x < -kCoordLimit || p.y > kCoordLimit || p.y < -kCoordLimit)
    throw std::out_of_range("lattice coordinate exceeds 2^29");
}

}  // namespace

std::int64_t cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }
std::int64_t dot(LatticePoint a, LatticePoint b) { return a.x * b.x + a.y * b.y; }
std::int64_t norm_sq(LatticePoint a) { return dot(a, a); }

void check_coordinates(const LatticeTriangle& tri) {
  check_point(tri.p0);
  check_point(tri.p1);
  check_point(tri.p2);
}

std::int64_t twice_area(const LatticeTriangle& tri) {
  check_coordinates(tri);
  const std::int64_t d = cross(tri.p1 - tri.p0, tri.p2 - tri.p0);
  return d < 0 ? -d : d;
}

TriangleMetrics squared_sides(const LatticeTriangle& tri) {
  check_coordinates(tri);
  std::array<std::int64_t, 3> s{norm_sq(tri.p1 - tri.p0), norm_sq(tri.p2 - tri.p1), norm_sq(tri.p0 - tri.p2)};
  std::sort(s.begin(), s.end());
  return {s[0], s[1], s[2], twice_area(tri)};
}

bool heron_consistent(const TriangleMetrics& m) {
  const i128 t = m.t;
  const i128 e = static_cast<i128>(m.s1) + m.s2 - m.s3;
  return 4 * t * t == 4 * static_cast<i128>(m.s1) * m.s2 - e * e;
}

bool is_nonobtuse(const TriangleMetrics& m) {
  if (m.t == 0) throw DegenerateTriangle();
  return m.s1 + m.s2 >= m.s3;
}

bool is_nonobtuse(const LatticeTriangle& tri) { return is_nonobtuse(squared_sides(tri)); }

bool in_T(const LatticeTriangle& tri, const Rational& q) {
  if (q <= 0) throw std::invalid_argument("q must be positive");
  const TriangleMetrics m = squared_sides(tri);
  return is_nonobtuse(m) && Rational(m.s1) >= q;
}

LatticePoint apply_symmetry(int k, LatticePoint p) {
  switch (k & 7) {
    case 0: return {p.x, p.y};
    case 1: return {-p.y, p.x};
    case 2: return {-p.x, -p.y};
    case 3: return {p.y, -p.x};
    case 4: return {p.x, -p.y};
    case 5: return {p.y, p.x};
    case 6: return {-p.x, p.y};
    default: return {-p.y, -p.x};
  }
}

LatticeTriangle canonical_form(const LatticeTriangle& tri) {
  check_coordinates(tri);
  LatticeTriangle best{};
  bool have = false;
  for (int k = 0; k < 8; ++k) {
    std::array<LatticePoint, 3> v{apply_symmetry(k, tri.p0), apply_symmetry(k, tri.p1), apply_symmetry(k, tri.p2)};
    std::sort(v.begin(), v.end());
    const LatticePoint o = v[0];
    LatticeTriangle cand{v[0] - o, v[1] - o, v[2] - o};
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
  }
  return best;
}

TrapezoidSums trapezoid_sum_check(LatticePoint o, LatticePoint a, LatticePoint b, LatticePoint w) {
  for (LatticePoint p : {o, a, b, w}) check_point(p);
  const LatticePoint ab = b - a;
  const LatticePoint ow = w - o;
  if (cross(ab, ow) != 0) throw NotParallel();
  // parallel vectors: |AB|*|OW| equals |dot(AB, OW)|
  const std::int64_t d = dot(ab, ow);
  if (d < 0) throw std::invalid_argument("O, A, B, W are not in trapezoid order");
  const std::int64_t lhs = norm_sq(b - o) + norm_sq(w - a);
  const std::int64_t rhs = norm_sq(o - a) + norm_sq(w - b) + 2 * d;
  return {lhs, QuadValue(Rational(rhs))};
}

}  // namespace sdcert

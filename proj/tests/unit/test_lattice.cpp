#include <doctest.h>

#include <random>
#include <set>

#include "sdcert/lattice.hpp"

using namespace sdcert;

namespace {

LatticeTriangle tri(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t e, std::int64_t f) {
  return {{a, b}, {c, d}, {e, f}};
}

}  // namespace

TEST_CASE("twice_area") {
  CHECK(twice_area(tri(0, 0, 1, 0, 0, 1)) == 1);
  CHECK(twice_area(tri(0, 0, 30, 112, -82, 82)) == 11644);
  CHECK(twice_area(tri(0, 0, 2, 4, 1, 2)) == 0);
  CHECK_THROWS_AS(twice_area(tri(0, 0, kCoordLimit + 1, 0, 0, 1)), std::out_of_range);
}

TEST_CASE("squared_sides") {
  CHECK(squared_sides(tri(0, 0, 1, 0, 0, 1)) == TriangleMetrics{1, 1, 2, 1});
  CHECK(squared_sides(tri(0, 0, 2, 0, 1, 2)) == TriangleMetrics{4, 5, 5, 4});
  CHECK(squared_sides(tri(0, 0, 30, 112, -82, 82)) == TriangleMetrics{13444, 13444, 13448, 11644});
}

TEST_CASE("is_nonobtuse and in_T") {
  CHECK(is_nonobtuse(tri(0, 0, 1, 0, 0, 1)));
  CHECK_FALSE(is_nonobtuse(tri(0, 0, 4, 0, 1, 1)));
  CHECK(is_nonobtuse(tri(0, 0, 2, 0, 1, 2)));
  CHECK_THROWS_AS(is_nonobtuse(tri(0, 0, 2, 4, 1, 2)), DegenerateTriangle);

  CHECK(in_T(tri(0, 0, 1, 0, 0, 1), Rational(1)));
  CHECK_FALSE(in_T(tri(0, 0, 1, 0, 0, 1), Rational(2)));
  CHECK(in_T(tri(0, 0, 30, 112, -82, 82), Rational(13421)));
  CHECK_FALSE(in_T(tri(0, 0, 30, 112, -82, 82), Rational(13445)));
  CHECK(in_T(tri(0, 0, 30, 112, -82, 82), Rational(13444)));
  CHECK_THROWS_AS(in_T(tri(0, 0, 2, 4, 1, 2), Rational(1)), DegenerateTriangle);
}

TEST_CASE("canonical_form") {
  const LatticeTriangle unit = canonical_form(tri(0, 0, 1, 0, 0, 1));
  std::set<LatticeTriangle> images;
  for (int k = 0; k < 8; ++k) {
    for (LatticePoint shift : {LatticePoint{5, 5}, LatticePoint{-3, 9}}) {
      std::array<LatticePoint, 3> v{apply_symmetry(k, {0, 0}) + shift, apply_symmetry(k, {1, 0}) + shift,
                                    apply_symmetry(k, {0, 1}) + shift};
      std::sort(v.begin(), v.end());
      do {
        images.insert(canonical_form({v[0], v[1], v[2]}));
      } while (std::next_permutation(v.begin(), v.end()));
    }
  }
  CHECK(images.size() == 1);
  CHECK(*images.begin() == unit);
  CHECK(canonical_form(tri(5, 5, 6, 5, 5, 6)) == unit);
  CHECK(canonical_form(tri(0, 0, 0, 1, 1, 0)) == canonical_form(tri(0, 0, -1, 0, 0, -1)));

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> c(-40, 40);
  for (int i = 0; i < 500; ++i) {
    LatticeTriangle t = tri(c(rng), c(rng), c(rng), c(rng), c(rng), c(rng));
    LatticeTriangle cf = canonical_form(t);
    CHECK(canonical_form(cf) == cf);
    CHECK(twice_area(cf) == twice_area(t));
    CHECK(squared_sides(cf) == squared_sides(t));
    if (twice_area(t) == 0) continue;
    const bool base = is_nonobtuse(t);
    const int k = static_cast<int>(rng() % 8);
    LatticeTriangle img{apply_symmetry(k, t.p2), apply_symmetry(k, t.p0), apply_symmetry(k, t.p1)};
    CHECK(is_nonobtuse(img) == base);
  }
}

TEST_CASE("Heron consistency") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> c(-100000, 100000);
  for (int i = 0; i < 2000; ++i) {
    LatticeTriangle t = tri(c(rng), c(rng), c(rng), c(rng), c(rng), c(rng));
    CHECK(heron_consistent(squared_sides(t)));
  }
}

TEST_CASE("in_T is monotone in q") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> c(-12, 12);
  for (int i = 0; i < 400; ++i) {
    LatticeTriangle t = tri(0, 0, c(rng), c(rng), c(rng), c(rng));
    if (twice_area(t) == 0) continue;
    for (int q = 1; q < 60; ++q)
      if (in_T(t, Rational(q + 1))) CHECK(in_T(t, Rational(q)));
  }
}

TEST_CASE("trapezoid_sum_check") {
  auto a = trapezoid_sum_check({0, 0}, {1, 1}, {2, 1}, {3, 0});
  CHECK(a.lhs == 10);
  CHECK(a.rhs == QuadValue(10));
  auto b = trapezoid_sum_check({0, 0}, {0, 1}, {1, 1}, {1, 0});
  CHECK(b.lhs == 4);
  CHECK(b.rhs == QuadValue(4));
  CHECK_THROWS_AS(trapezoid_sum_check({0, 0}, {0, 1}, {2, 2}, {1, 0}), NotParallel);
  CHECK_THROWS_AS(trapezoid_sum_check({0, 0}, {1, 1}, {0, 1}, {1, 0}), std::invalid_argument);
}

#include <doctest.h>

#include <random>

#include "sdcert/diophantine.hpp"

using namespace sdcert;

TEST_CASE("pell_stream") {
  auto two = pell_stream(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == PellSolution{1, 1});
  CHECK(two[1] == PellSolution{3, 5});
  auto four = pell_stream(4);
  CHECK(four[2] == PellSolution{11, 19});
  CHECK(four[3] == PellSolution{41, 71});
  for (const auto& s : pell_stream(30)) {
    CHECK(3 * s.v * s.v - 2 == s.u * s.u);
    CHECK(frac_lower_bound_check(s));
    // {v sqrt(3)} < 1/v
    const QuadValue f = frac(QuadValue(Rational(0), Rational(s.v)));
    CHECK(compare_quad(f, QuadValue(Rational(1) / Rational(s.v))) < 0);
  }
}

TEST_CASE("frac_lower_bound_check") {
  CHECK(frac_lower_bound_check({3, 5}));
  CHECK(frac_lower_bound_check({11, 19}));
  CHECK(frac_lower_bound_check({1, 1}));
  CHECK_THROWS_AS(frac_lower_bound_check({2, 3}), std::invalid_argument);
}

TEST_CASE("min_multiplier_in_window examples") {
  for (auto f : {&min_multiplier_in_window, +[](const Rational& lo, const Rational& hi) {
                   return min_multiplier_in_window_scan(lo, hi);
                 }}) {
    CHECK(f(Rational(1, 2), Rational(3, 5)).s == 9);
    CHECK(f(Rational(0), Rational(1, 10)).s == 11);
    CHECK(f(Rational(9, 10), Rational(1)).s == 4);
    CHECK(f(Rational(0), Rational(1)).s == 1);
  }
  CHECK_THROWS_AS(min_multiplier_in_window(Rational(1, 2), Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("descent agrees with the scan and the scan is minimal") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const long den = 20 + static_cast<long>(rng() % 2000);
    const long width = 1 + static_cast<long>(rng() % (den / 20 + 1));
    const long start = static_cast<long>(rng() % (den - width + 1));
    const Rational lo(start, den), hi(start + width, den);
    const auto fast = min_multiplier_in_window(lo, hi);
    const auto slow = min_multiplier_in_window_scan(lo, hi);
    CHECK(fast.s == slow.s);
    if (hi - lo >= Rational(1, 20)) {
      for (Integer s = 1; s < slow.s; ++s) {
        const QuadValue f = frac(QuadValue(Rational(0), Rational(s)));
        const bool inside = compare_quad(f, QuadValue(lo)) >= 0 && compare_quad(f, QuadValue(hi)) <= 0;
        CHECK_FALSE(inside);
      }
    }
  }
  // narrow windows that the scan reaches only after many steps
  const auto deep = min_multiplier_in_window(Rational(123456, 1000000), Rational(123466, 1000000));
  CHECK(deep.s == min_multiplier_in_window_scan(Rational(123456, 1000000), Rational(123466, 1000000)).s);
}

TEST_CASE("largest_below") {
  CHECK(largest_below(Integer(100), Rational(1, 10)).s == 97);
  CHECK(largest_below(Integer(10), Rational(1, 10)).s == 4);
  CHECK(largest_below(Integer(100), Rational(1, 2)).s == 100);
  CHECK(largest_below(Integer(0), Rational(1, 10)).s == 0);
  CHECK(largest_below(Integer(-5), Rational(1, 10)).s == 0);
  CHECK(smallest_above(Integer(1), Rational(1, 17)).s == 11);
}

TEST_CASE("grid_point_in_segment") {
  CHECK(grid_point_in_segment(0, 7, 0, Grid::Integers) == 4);
  CHECK(grid_point_in_segment(10, 17, Rational(1, 2), Grid::Integers) == 13);
  CHECK(grid_point_in_segment(Rational(1, 5), Rational(36, 5), 0, Grid::HalfIntegers) == 4);
  CHECK_THROWS_AS(grid_point_in_segment(0, Rational(13, 2), 0, Grid::Integers), std::invalid_argument);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const Rational lo(static_cast<long>(rng() % 100000) - 50000, 1 + static_cast<long>(rng() % 97));
    const Rational hi = lo + 7 + Rational(static_cast<long>(rng() % 50), 13);
    const Rational shift(static_cast<long>(rng() % 1000), 1 + static_cast<long>(rng() % 997));
    for (Grid g : {Grid::Integers, Grid::HalfIntegers, Grid::OddHalves}) {
      const Rational p = grid_point_in_segment(lo, hi, shift, g);
      CHECK(p >= lo);
      CHECK(p <= hi);
      const Rational twice = 2 * p;
      CHECK(boost::multiprecision::denominator(twice) == 1);
      if (g == Grid::Integers) CHECK(boost::multiprecision::denominator(p) == 1);
      if (g == Grid::OddHalves) CHECK(boost::multiprecision::denominator(p) == 2);
    }
  }
}

TEST_CASE("seven_gap") {
  CHECK(seven_gap() == QuadValue(Rational(-5), Rational(3)));
  CHECK(seven_gap() == QuadValue::seven_point_eps() * QuadValue(2));
  auto pts = seven_points_sorted();
  CHECK(pts[0] == QuadValue(0));
  CHECK(pts[1] == QuadValue(Rational(-5), Rational(3)));
}

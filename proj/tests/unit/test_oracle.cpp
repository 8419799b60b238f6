#include <doctest.h>

#include "sdcert/oracle.hpp"
#include "sdcert/witness.hpp"

using namespace sdcert;

TEST_CASE("critical_values") {
  CHECK(critical_values(10) == std::vector<std::int64_t>{1, 2, 4, 5, 8, 9, 10});
  CHECK(critical_values(1) == std::vector<std::int64_t>{1});
  for (auto v : critical_values(5000)) CHECK(is_sum_of_two_squares(static_cast<std::uint64_t>(v)));
  CHECK(critical_values(5000).size() == [] {
    std::size_t n = 0;
    for (std::uint64_t v = 1; v <= 5000; ++v) n += is_sum_of_two_squares(v);
    return n;
  }());
  CHECK_THROWS_AS(critical_values(0), std::invalid_argument);
}

TEST_CASE("exact_S small values") {
  auto s1 = exact_S(Rational(1));
  CHECK(s1.s == 1);
  REQUIRE(s1.m_triangles.size() == 1);
  CHECK(s1.m_triangles[0] == canonical_form({{0, 0}, {1, 0}, {0, 1}}));

  auto s2 = exact_S(Rational(2));
  CHECK(s2.s == 2);
  CHECK(std::find(s2.m_triangles.begin(), s2.m_triangles.end(), canonical_form({{0, 0}, {2, 0}, {1, 1}})) !=
        s2.m_triangles.end());

  auto s4 = exact_S(Rational(4));
  CHECK(s4.s == 4);
  CHECK(std::find(s4.m_triangles.begin(), s4.m_triangles.end(), canonical_form({{0, 0}, {2, 0}, {1, 2}})) !=
        s4.m_triangles.end());

  CHECK(exact_S(Rational(3)).s == exact_S(Rational(4)).s);
  CHECK(exact_S(Rational(7, 2)).s == 4);
  CHECK_THROWS_AS(exact_S(Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("exact_S matches the naive box") {
  for (auto q : critical_values(60)) {
    const auto a = exact_S(Rational(q));
    const auto b = exact_S_naive(Rational(q));
    CHECK(a.s == b.s);
    CHECK(a.m_triangles == b.m_triangles);
  }
}

TEST_CASE("exact_S properties") {
  std::int64_t prev = 0;
  for (auto q : critical_values(1500)) {
    const auto sv = exact_S(Rational(q));
    CHECK(compare_main_term(Integer(sv.s), Rational(q)) > 0);
    CHECK(sv.s >= prev);
    prev = sv.s;
    for (const auto& t : sv.m_triangles) {
      CHECK(twice_area(t) == sv.s);
      CHECK(in_T(t, Rational(q)));
      CHECK(canonical_form(t) == t);
    }
    if (q >= 100) CHECK(sv.s <= best_bound(Rational(q)).cert.twice_area);
  }
}

TEST_CASE("budget") {
  try {
    exact_S(Rational(5000), 3);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.bound >= exact_S(Rational(5000)).s);
  }
}

TEST_CASE("detect_sliding examples") {
  auto r1 = detect_sliding(Rational(1));
  CHECK(r1.slides);
  REQUIRE(r1.witness);
  CHECK(*r1.witness == SlidingWitness{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(*r1.bound_ok);

  auto r2 = detect_sliding(Rational(2));
  CHECK(r2.slides);
  REQUIRE(r2.witness);
  CHECK(r2.witness->w == LatticePoint{1, 1});
  CHECK(*r2.bound_ok);

  auto r4 = detect_sliding(Rational(4));
  CHECK(r4.slides);
  REQUIRE(r4.witness);
  CHECK(*r4.witness == SlidingWitness{{0, 0}, {2, 0}, {0, 2}, {1, 2}});
  CHECK(*r4.bound_ok);

  CHECK(check_sliding_bound(Rational(1)));
  CHECK(check_sliding_bound(Rational(2)));
  CHECK(check_sliding_bound(Rational(4)));
}

TEST_CASE("sliding witnesses are genuine") {
  for (auto q : critical_values(200)) {
    const auto sv = exact_S(Rational(q));
    const auto r = detect_sliding(sv);
    if (!r.slides) {
      CHECK_THROWS_AS(check_sliding_bound(r), std::invalid_argument);
      continue;
    }
    const auto& w = *r.witness;
    const LatticeTriangle ta{w.o, w.w, w.a}, tb{w.o, w.w, w.b};
    CHECK(std::binary_search(sv.m_triangles.begin(), sv.m_triangles.end(), canonical_form(ta)));
    CHECK(std::binary_search(sv.m_triangles.begin(), sv.m_triangles.end(), canonical_form(tb)));
    CHECK(cross(w.w, w.a) > 0);
    CHECK(cross(w.w, w.b) > 0);
    CHECK(w.a != w.b);
    CHECK(*r.bound_ok);
  }
}

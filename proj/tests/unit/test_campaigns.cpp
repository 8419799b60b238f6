#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "sdcert/campaigns.hpp"
#include "sdcert/witness.hpp"

using namespace sdcert;

TEST_CASE("valid_list") {
  const auto l = valid_list(200, Rational(1, 17));
  REQUIRE(l.size() >= 6);
  CHECK(std::vector<std::int64_t>(l.begin(), l.begin() + 6) == std::vector<std::int64_t>{11, 15, 26, 30, 41, 45});
}

TEST_CASE("default_bin_width") {
  // (2 - sqrt(2)) / 34 = 0.017229...
  CHECK(default_bin_width(Rational(1, 17)) == Rational(172, 10000));
  CHECK(default_bin_width(Rational(1, 10)) == Rational(292, 10000));
}

TEST_CASE("cover_scan small") {
  CoverOptions opt;
  const auto r = cover_scan(3000, Rational(1, 17), opt);
  CHECK(r.list_size == static_cast<std::int64_t>(valid_list(3000, Rational(1, 17)).size()));
  CHECK(r.covered_lo <= r.covered_hi);
  CHECK(r.pairs == static_cast<std::uint64_t>(r.list_size) * (r.list_size + 1) / 2);
  for (const auto& g : r.gaps) {
    CHECK(g.hi_sq > g.lo_sq);
    CHECK(g.width > (2 - std::sqrt(2.0)) / 17 - 1e-12);
    CHECK(Rational(g.hi_sq) <= Rational(4 * 3000 * 3000));
  }

  opt.threads = 3;
  const auto r3 = cover_scan(3000, Rational(1, 17), opt);
  CHECK(r3.covered_lo == r.covered_lo);
  CHECK(r3.covered_hi == r.covered_hi);
  CHECK(r3.gaps.size() == r.gaps.size());

  CoverOptions wide;
  wide.bin_width = Rational(1, 10);
  CHECK_THROWS_AS(cover_scan(3000, Rational(1, 17), wide), std::invalid_argument);
  CHECK_THROWS_AS(cover_scan(50, Rational(1, 17)), std::invalid_argument);
}

TEST_CASE("cover_scan against a direct gap search") {
  const std::int64_t x_max = 1500;
  const Rational eps(1, 10);
  const auto rep = cover_scan(x_max, eps);
  const auto list = valid_list(x_max, eps);
  std::vector<double> vals;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i; j < list.size(); ++j) vals.push_back(2 * std::sqrt(double(list[i] * list[i] + list[j] * list[j])));
  std::sort(vals.begin(), vals.end());
  const double crit = (2 - std::sqrt(2.0)) / 10;
  const double lo = to_double(rep.covered_lo), hi = to_double(rep.covered_hi);
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i - 1] >= lo && vals[i] <= hi) CHECK(vals[i] - vals[i - 1] <= crit + 1e-9);
  }
}

TEST_CASE("cover_scan checkpoint resumes") {
  const auto dir = std::filesystem::temp_directory_path() / "sdcert_cover_ck";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "run").string();
  std::filesystem::remove(prefix + ".json");
  CoverOptions opt;
  opt.checkpoint = prefix;
  opt.checkpoint_every = 7;
  const auto a = cover_scan(2000, Rational(1, 17), opt);
  CHECK(std::filesystem::exists(prefix + ".json"));
  const auto b = cover_scan(2000, Rational(1, 17), opt);
  const auto c = cover_scan(2000, Rational(1, 17));
  CHECK(a.covered_lo == c.covered_lo);
  CHECK(b.covered_lo == c.covered_lo);
  CHECK(b.covered_hi == c.covered_hi);
  CHECK(b.pairs == c.pairs);
  std::filesystem::remove_all(dir);
}

TEST_CASE("table pair (15, 56)") {
  CHECK(nearest_half_sqrt3(15, -56) == -41);
  CHECK(nearest_half_sqrt3(56, 15) == 41);
  const LatticeTriangle tri{{0, 0}, {15, 56}, {-41, 41}};
  const auto m = squared_sides(tri);
  CHECK(m.s1 == 3361);
  CHECK(m.t == 2911);
  const auto l = table_list(10'000, Rational(1, 10));
  CHECK(std::binary_search(l.begin(), l.end(), 15));
  CHECK(std::binary_search(l.begin(), l.end(), 56));
}

TEST_CASE("triangle_table") {
  const auto t = triangle_table(200'000, Rational(1, 10));
  REQUIRE(!t.rows.empty());
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].min_side_sq < t.rows[i - 1].min_side_sq);
    CHECK(t.rows[i].twice_area < t.rows[i - 1].twice_area);
  }
  for (const auto& r : t.rows) {
    CHECK(twice_area(r.triangle) == r.twice_area);
    CHECK(squared_sides(r.triangle).s1 == r.min_side_sq);
    CHECK(is_nonobtuse(r.triangle));
  }
  const auto b = table_bound(t, 3361);
  REQUIRE(b);
  CHECK(*b <= 2911);
  CHECK_FALSE(table_bound(t, 10'000'000).has_value());

  TableOptions two;
  two.threads = 2;
  const auto t2 = triangle_table(200'000, Rational(1, 10), two);
  REQUIRE(t2.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t2.rows[i].min_side_sq == t.rows[i].min_side_sq);
    CHECK(t2.rows[i].triangle == t.rows[i].triangle);
  }

  const auto chk = check_table(t, 1000, 5000);
  CHECK_FALSE(chk.uncovered);
  CHECK(chk.segments_checked > 0);
  const auto far = check_table(t, 1000, 10'000'000);
  CHECK(far.uncovered);
}

TEST_CASE("check_table against a direct scan") {
  const auto t = triangle_table(100'000, Rational(1, 10));
  const std::int64_t q_lo = 2000, q_hi = 60'000;
  const auto chk = check_table(t, q_lo, q_hi);
  std::size_t bad_segments = 0;
  std::int64_t last_end = -1;
  for (std::int64_t q = q_lo; q <= q_hi; ++q) {
    if (!is_sum_of_two_squares(static_cast<std::uint64_t>(q))) continue;
    const auto b = table_bound(t, q);
    REQUIRE(b);
    if (compare_small_d_bound(Integer(*b), Rational(q)) >= 0) {
      std::int64_t end = 0;
      for (const auto& r : t.rows)
        if (r.min_side_sq >= q) end = r.min_side_sq;
      if (end != last_end) ++bad_segments;
      last_end = end;
    }
  }
  CHECK(chk.failures.size() == bad_segments);
}

TEST_CASE("log_spaced_q") {
  const auto qs = log_spaced_q(Rational(4'000'000), Rational(10'000'000'000LL), 50);
  REQUIRE(qs.size() == 50);
  CHECK(qs.front() == 4'000'000);
  CHECK(qs.back() == 10'000'000'000LL);
  for (std::size_t i = 1; i < qs.size(); ++i) CHECK(qs[i] > qs[i - 1]);
}

TEST_CASE("residual_scan") {
  const auto rows = residual_scan({Rational(13421), Rational(4'000'000)});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].residual_sign > 0);
  CHECK(rows[0].certificate_ok);
  CHECK_FALSE(rows[0].small_d_bound_ok.has_value());
  CHECK(rows[1].residual_sign > 0);
  CHECK(rows[1].small_d_bound_ok.has_value());
  CHECK_THROWS_AS(residual_scan({Rational(50)}), std::invalid_argument);
}

TEST_CASE("sliding_scan") {
  const auto s = sliding_scan(4);
  CHECK(s.sliding() == std::vector<std::int64_t>{1, 2, 4});
  CHECK(s.all_bounds_ok());
  const auto s2 = sliding_scan(100, 3);
  CHECK(s2.sliding() == sliding_scan(100).sliding());
  CHECK(s2.all_bounds_ok());
}

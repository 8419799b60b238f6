#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "sdcert/json_io.hpp"
#include "sdcert/parallel.hpp"

using namespace sdcert;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), sec);
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(8);
  s << v;
  return s.str();
}

Outcome exact_small_values() {
  const bool small = exact_S(Rational(1)).s == 1 && exact_S(Rational(2)).s == 2 && exact_S(Rational(4)).s == 4;
  const auto qs = critical_values(100);
  std::vector<char> same(qs.size(), 0);
  parallel_for(qs.size(), resolve_threads(), [&](std::size_t i) {
    const auto a = exact_S(Rational(qs[i]));
    const auto b = exact_S_naive(Rational(qs[i]));
    same[i] = a.s == b.s && a.m_triangles == b.m_triangles;
  });
  std::size_t agree = 0;
  for (char c : same) agree += c != 0;
  return {small && agree == qs.size(),
          "S(1), S(2), S(4) = " + std::to_string(exact_S(Rational(1)).s) + ", " + std::to_string(exact_S(Rational(2)).s) +
              ", " + std::to_string(exact_S(Rational(4)).s) + "; naive box agrees on " + std::to_string(agree) + "/" +
              std::to_string(qs.size()) + " critical q <= 100"};
}

Outcome sliding_detection(const std::string& snapshot) {
  bool small_ok = true;
  for (long q : {1L, 2L, 4L}) {
    const SValue sv = exact_S(Rational(q));
    const auto r = detect_sliding(sv);
    if (!r.slides || !r.witness || !check_sliding_bound(r)) {
      small_ok = false;
      continue;
    }
    const auto& w = *r.witness;
    for (const auto& apex : {w.a, w.b}) {
      const LatticeTriangle t{w.o, w.w, apex};
      if (!std::binary_search(sv.m_triangles.begin(), sv.m_triangles.end(), canonical_form(t))) small_ok = false;
    }
    if (cross(w.w - w.o, w.a - w.o) <= 0 || cross(w.w - w.o, w.b - w.o) <= 0 || w.a == w.b) small_ok = false;
  }
  const auto scan = sliding_scan(400, resolve_threads());
  std::size_t violations = 0;
  for (const auto& r : scan.reports)
    if (r.slides && !r.bound_ok.value_or(false)) ++violations;
  std::string snap = "snapshot not found";
  std::ifstream f(snapshot);
  if (f) {
    const Json j = Json::parse(f);
    snap = j.at("sliding").get<std::vector<std::int64_t>>() == scan.sliding() ? "snapshot matches" : "snapshot differs";
  }
  return {small_ok && violations == 0,
          "q = 1, 2, 4 slide with verified witnesses: " + std::string(small_ok ? "yes" : "no") + "; " +
              std::to_string(scan.sliding().size()) + " sliding values among " + std::to_string(scan.reports.size()) +
              " critical q <= 400, bound violations " + std::to_string(violations) + "; " + snap};
}

Outcome certificate_reproduction() {
  const auto c = build_witness(Rational(13421), Rational(1, 17));
  if (!c) return {false, "no certificate"};
  const auto m = squared_sides(c->triangle);
  const bool shape = c->triangle == LatticeTriangle{{0, 0}, {30, 112}, {-82, 82}} && c->twice_area == 11644 &&
                     m.s1 == 13444 && m.s2 == 13444 && m.s3 == 13448;
  const bool ok = verify_certificate(*c);
  const auto back = certificate_from_json(Json::parse(to_json(*c).dump()));
  const bool round = verify_certificate(back) && to_json(back) == to_json(*c);
  return {shape && ok && round, "triangle " + to_json(c->triangle).dump() + ", twice_area " +
                                    std::to_string(c->twice_area) + ", verified " + (ok ? "yes" : "no") +
                                    ", JSON round trip " + (round ? "yes" : "no")};
}

Outcome seven_point_gap() {
  const QuadValue gap = seven_gap();
  const QuadValue expect(Rational(-5), Rational(3));
  const bool ok = gap == expect && gap == QuadValue(2) * QuadValue::seven_point_eps();
  return {ok, "gap = " + to_string(gap.a()) + " + " + to_string(gap.b()) + " sqrt(3)"};
}

Outcome pell() {
  const auto sols = pell_stream(5);
  const std::vector<long> want{1, 3, 11, 41, 153};
  bool ok = sols.size() == 5;
  std::string vs;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    ok = ok && sols[i].v == want[i] && 3 * sols[i].v * sols[i].v - 2 == sols[i].u * sols[i].u &&
         frac_lower_bound_check(sols[i]);
    vs += (i ? " " : "") + to_string(sols[i].v);
  }
  return {ok, "v = " + vs};
}

Outcome trapezoids() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> c(-1000, 1000), k(1, 20);
  int equal = 0, n = 0;
  while (n < 10'000) {
    const LatticePoint o{c(rng), c(rng)}, a{c(rng), c(rng)};
    const LatticePoint d{c(rng) / 10, c(rng) / 10};
    if (d.x == 0 && d.y == 0) continue;
    const std::int64_t kw = k(rng), kb = k(rng);
    const LatticePoint w{o.x + kw * d.x, o.y + kw * d.y}, b{a.x + kb * d.x, a.y + kb * d.y};
    ++n;
    const auto s = trapezoid_sum_check(o, a, b, w);
    if (QuadValue(Rational(s.lhs)) == s.rhs) ++equal;
  }
  return {equal == n, std::to_string(equal) + "/" + std::to_string(n) + " identities hold"};
}

Outcome cover() {
  const Rational eps(1, 17);
  CoverOptions one;
  one.bin_width = default_bin_width(eps);
  one.threads = 1;
  CoverOptions many = one;
  many.threads = std::max(8u, resolve_threads());
  const CoverReport r1 = cover_scan(300'000, eps, one);
  const CoverReport r8 = cover_scan(300'000, eps, many);
  const bool same = to_json(r1).dump() == to_json(r8).dump();
  const bool range = r1.covered_lo <= 100'000 && r1.covered_hi >= 600'000;
  std::string last = "none";
  if (!r1.gaps.empty()) {
    const auto& g = r1.gaps.back();
    last = fmt(std::sqrt(double(g.lo_sq))) + " (width " + fmt(g.width) + ")";
  }
  return {range && same, "bin width " + to_string(r1.bin_width) + ", covered [" + fmt(to_double(r1.covered_lo)) + ", " +
                             fmt(to_double(r1.covered_hi)) + "], " + std::to_string(r1.gaps.size()) +
                             " violating gaps above " + fmt(to_double(r1.window_lo)) + ", highest at " + last +
                             ", identical across 1 and " + std::to_string(many.threads) + " workers: " +
                             (same ? "yes" : "no")};
}

Outcome table() {
  TableOptions opt;
  opt.threads = resolve_threads();
  const StepTable t = triangle_table(1'000'000'000, Rational(1, 10), opt);
  const TableCheck chk = check_table(t, 4'000'000, 900'000'000);
  std::string first = "none";
  if (!chk.failures.empty())
    first = std::to_string(std::min_element(chk.failures.begin(), chk.failures.end(), [](const auto& a, const auto& b) {
                             return a.q_first < b.q_first;
                           })->q_first);
  return {chk.ok(), std::to_string(t.rows.size()) + " rows, " + std::to_string(chk.segments_checked) +
                        " segments checked, " + std::to_string(chk.failures.size()) +
                        " segments fail the small-D inequality (smallest failing q " + first + ")" +
                        (chk.uncovered ? ", range not covered" : "")};
}

Outcome residuals() {
  const auto qs = log_spaced_q(Rational(4'000'000), Rational(10'000'000'000LL), 50);
  const auto rows = residual_scan(qs, resolve_threads());
  int cert_ok = 0, small_ok = 0, positive = 0;
  std::string bad;
  for (const auto& r : rows) {
    cert_ok += r.certificate_ok;
    positive += r.residual_sign > 0;
    if (r.small_d_bound_ok.value_or(false)) {
      ++small_ok;
    } else {
      bad += (bad.empty() ? "" : ", ") + to_string(r.q) + " (twice_area " + std::to_string(r.twice_area) + ")";
    }
  }
  const int n = static_cast<int>(rows.size());
  return {cert_ok == n && small_ok == n && positive == n,
          std::to_string(cert_ok) + "/" + std::to_string(n) + " certificates verified, " + std::to_string(small_ok) +
              "/" + std::to_string(n) + " below the small-D bound" + (bad.empty() ? "" : "; failing q: " + bad)};
}

Outcome sandwich() {
  const auto qs = critical_values(10'000);
  std::vector<char> lower(qs.size(), 0), upper(qs.size(), 0);
  parallel_for(qs.size(), resolve_threads(), [&](std::size_t i) {
    const Rational q(qs[i]);
    const SValue sv = exact_S(q);
    lower[i] = compare_main_term(Integer(sv.s), q) > 0;
    upper[i] = qs[i] < 100 || sv.s <= best_bound(q).cert.twice_area;
  });
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    lo += lower[i] != 0;
    hi += upper[i] != 0;
  }
  return {lo == qs.size() && hi == qs.size(),
          std::to_string(qs.size()) + " critical q <= 10^4: lower bound holds for " + std::to_string(lo) +
              ", upper bound (q >= 100) holds for " + std::to_string(hi)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string snapshot = argc > 1 ? argv[1] : "tests/data/sliding_snapshot_400.json";
  report(1, "exact small values", exact_small_values);
  report(2, "sliding detection", [&] { return sliding_detection(snapshot); });
  report(3, "certificate reproduction", certificate_reproduction);
  report(4, "seven-point gap", seven_point_gap);
  report(5, "Pell stream", pell);
  report(6, "trapezoid identity", trapezoids);
  report(7, "cover scan", cover);
  report(8, "triangle table", table);
  report(9, "residual scan", residuals);
  report(10, "sandwich", sandwich);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

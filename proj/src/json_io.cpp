#include "sdcert/json_io.hpp"

#include <cmath>

namespace sdcert {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const VerificationError&) {
    throw;
  } catch (const std::exception& e) {
    throw VerificationError(std::string("bad ") + what + ": " + e.what());
  }
}

std::int64_t int_field(const Json& j, const char* key) {
  return guarded(key, [&] { return j.at(key).get<std::int64_t>(); });
}

Json points(const LatticeTriangle& t) { return Json::array({to_json(t.p0), to_json(t.p1), to_json(t.p2)}); }

}  // namespace

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw VerificationError("rational must be a string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw VerificationError(e.what());
  }
}

Json to_json(const QuadValue& v) { return {{"a", rational_json(v.a())}, {"b", rational_json(v.b())}}; }

QuadValue quad_from_json(const Json& j) {
  return guarded("quad value", [&] { return QuadValue(rational_from_json(j.at("a")), rational_from_json(j.at("b"))); });
}

Json to_json(const LatticePoint& p) { return Json::array({p.x, p.y}); }

LatticePoint point_from_json(const Json& j) {
  return guarded("point", [&] {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y]");
    return LatticePoint{j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()};
  });
}

Json to_json(const LatticeTriangle& t) { return points(t); }

LatticeTriangle triangle_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw VerificationError("triangle must have three points");
  return {point_from_json(j.at(0)), point_from_json(j.at(1)), point_from_json(j.at(2))};
}

Json to_json(const TriangleMetrics& m) { return {{"s", Json::array({m.s1, m.s2, m.s3})}, {"t", m.t}}; }

Json to_json(const PellSolution& s) { return {{"v", to_string(s.v)}, {"u", to_string(s.u)}}; }

Json to_json(const WindowWitness& w) {
  return {{"s", to_string(w.s)}, {"frac", to_json(w.frac)}, {"frac_approx", w.frac.approx()}};
}

Json to_json(const PairWitness& p) {
  Json j = {{"x", rational_json(p.x())},
            {"y", rational_json(p.y())},
            {"norm_sq", rational_json(p.norm_sq)},
            {"eps", to_json(p.eps)}};
  if (p.slack) j["slack"] = rational_json(*p.slack);
  return j;
}

PairWitness pair_from_json(const Json& j) {
  PairWitness p;
  const Rational x = guarded("pair.x", [&] { return rational_from_json(j.at("x")); });
  const Rational y = guarded("pair.y", [&] { return rational_from_json(j.at("y")); });
  const Rational x2 = 2 * x, y2 = 2 * y;
  if (boost::multiprecision::denominator(x2) != 1 || boost::multiprecision::denominator(y2) != 1) throw VerificationError("pair coordinates must be half-integers");
  p.x2 = to_int64(boost::multiprecision::numerator(x2));
  p.y2 = to_int64(boost::multiprecision::numerator(y2));
  p.norm_sq = guarded("pair.norm_sq", [&] { return rational_from_json(j.at("norm_sq")); });
  p.eps = guarded("pair.eps", [&] { return quad_from_json(j.at("eps")); });
  if (j.contains("slack")) p.slack = rational_from_json(j.at("slack"));
  return p;
}

Json to_json(const WitnessCertificate& c) {
  Json rhs = Json::array();
  for (const auto& [coeff, rad] : c.bound_rhs) rhs.push_back(Json::array({rational_json(coeff), rational_json(rad)}));
  return {{"kind", to_string(c.kind)},
          {"q", rational_json(c.q)},
          {"eps", to_json(c.eps)},
          {"pair", to_json(c.pair)},
          {"z", c.z},
          {"t", c.t},
          {"triangle", to_json(c.triangle)},
          {"twice_area", c.twice_area},
          {"bound_rhs", rhs}};
}

WitnessCertificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw VerificationError("certificate must be an object");
  WitnessCertificate c;
  c.kind = guarded("kind", [&] { return certificate_kind_from_string(j.at("kind").get<std::string>()); });
  c.q = guarded("q", [&] { return rational_from_json(j.at("q")); });
  c.eps = guarded("eps", [&] { return quad_from_json(j.at("eps")); });
  c.pair = guarded("pair", [&] { return pair_from_json(j.at("pair")); });
  c.z = int_field(j, "z");
  c.t = int_field(j, "t");
  c.triangle = guarded("triangle", [&] { return triangle_from_json(j.at("triangle")); });
  c.twice_area = int_field(j, "twice_area");
  guarded("bound_rhs", [&] {
    for (const auto& term : j.at("bound_rhs")) {
      if (!term.is_array() || term.size() != 2) throw std::invalid_argument("term must be [coeff, radicand]");
      c.bound_rhs.emplace_back(rational_from_json(term.at(0)), rational_from_json(term.at(1)));
    }
    return 0;
  });
  return c;
}

Json to_json(const SValue& s) {
  Json tris = Json::array();
  for (const auto& t : s.m_triangles) tris.push_back({{"vertices", to_json(t)}, {"metrics", to_json(squared_sides(t))}});
  return {{"q", rational_json(s.q)}, {"s", s.s}, {"m_triangles", tris}};
}

Json to_json(const SlidingReport& r) {
  Json j = {{"q", rational_json(r.q)}, {"s", r.s}, {"slides", r.slides}};
  if (r.witness) {
    j["witness"] = {{"O", to_json(r.witness->o)},
                    {"W", to_json(r.witness->w)},
                    {"A", to_json(r.witness->a)},
                    {"B", to_json(r.witness->b)}};
  } else {
    j["witness"] = nullptr;
  }
  j["bound_ok"] = r.bound_ok ? Json(*r.bound_ok) : Json(nullptr);
  return j;
}

Json to_json(const CoverReport& r) {
  Json gaps = Json::array();
  for (const auto& g : r.gaps) {
    gaps.push_back({{"lo_sq", g.lo_sq},
                    {"hi_sq", g.hi_sq},
                    {"lo", std::sqrt(static_cast<double>(g.lo_sq))},
                    {"hi", std::sqrt(static_cast<double>(g.hi_sq))},
                    {"width", g.width}});
  }
  return {{"x_max", r.x_max},
          {"eps", rational_json(r.eps)},
          {"list_size", r.list_size},
          {"pairs", r.pairs},
          {"bin_width", rational_json(r.bin_width)},
          {"window_lo", rational_json(r.window_lo)},
          {"covered_lo", rational_json(r.covered_lo)},
          {"covered_hi", rational_json(r.covered_hi)},
          {"covered_lo_approx", to_double(r.covered_lo)},
          {"covered_hi_approx", to_double(r.covered_hi)},
          {"gaps", gaps}};
}

Json to_json(const StepTable& t, bool with_rows) {
  Json j = {{"r_max", t.r_max},
            {"tol", rational_json(t.tol)},
            {"list_size", t.list_size},
            {"triangle_count", t.triangle_count},
            {"row_count", t.rows.size()}};
  if (with_rows) {
    Json rows = Json::array();
    for (const auto& r : t.rows)
      rows.push_back({{"min_side_sq", r.min_side_sq}, {"twice_area", r.twice_area}, {"triangle", to_json(r.triangle)}});
    j["rows"] = rows;
  }
  return j;
}

Json to_json(const TableCheck& c) {
  Json f = Json::array();
  for (const auto& s : c.failures) f.push_back({{"q_first", s.q_first}, {"q_end", s.q_end}, {"bound", s.bound}});
  return {{"q_lo", c.q_lo},
          {"q_hi", c.q_hi},
          {"segments_checked", c.segments_checked},
          {"uncovered", c.uncovered},
          {"ok", c.ok()},
          {"failure_count", c.failures.size()},
          {"failures", f}};
}

Json to_json(const ResidualRow& r) {
  return {{"q", rational_json(r.q)},
          {"eps_used", rational_json(r.eps_used)},
          {"attempts", r.attempts},
          {"twice_area", r.twice_area},
          {"residual_sign", r.residual_sign},
          {"residual", r.residual},
          {"certificate_ok", r.certificate_ok},
          {"small_d_bound_ok", r.small_d_bound_ok ? Json(*r.small_d_bound_ok) : Json(nullptr)}};
}

Json to_json(const SlidingScan& s) {
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  return {{"q_max", s.q_max}, {"sliding", s.sliding()}, {"all_bounds_ok", s.all_bounds_ok()}, {"reports", reports}};
}

}  // namespace sdcert

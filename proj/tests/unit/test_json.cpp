#include <doctest.h>

#include "sdcert/json_io.hpp"

using namespace sdcert;

TEST_CASE("rational and quad round trips") {
  CHECK(rational_json(Rational(3, 17)) == "3/17");
  CHECK(rational_json(Rational(-4)) == "-4");
  CHECK(rational_from_json(Json("3/17")) == Rational(3, 17));
  CHECK(rational_from_json(Json(12)) == 12);
  CHECK_THROWS_AS(rational_from_json(Json("x")), VerificationError);
  const QuadValue e = QuadValue::seven_point_eps();
  CHECK(quad_from_json(to_json(e)) == e);
  CHECK(to_json(squared_sides({{0, 0}, {30, 112}, {-82, 82}})).dump() == R"({"s":[13444,13444,13448],"t":11644})");
}

TEST_CASE("certificate round trip") {
  const auto c = *build_witness(Rational(13421), Rational(1, 17));
  const Json j = to_json(c);
  CHECK(j["triangle"].dump() == "[[0,0],[30,112],[-82,82]]");
  const auto back = certificate_from_json(Json::parse(j.dump()));
  CHECK(verify_certificate(back));
  CHECK(to_json(back) == j);

  Json bad = j;
  bad["twice_area"] = 11643;
  CHECK_FALSE(verify_certificate(certificate_from_json(bad)));

  bad = j;
  bad.erase("pair");
  CHECK_THROWS_AS(certificate_from_json(bad), VerificationError);

  bad = j;
  bad["kind"] = "other";
  CHECK_THROWS_AS(certificate_from_json(bad), VerificationError);

  bad = j;
  bad["pair"]["x"] = "1/3";
  CHECK_THROWS_AS(certificate_from_json(bad), VerificationError);

  const Rational q(Integer(7'000'000) * 7'000'000 + 1);
  const auto ex = *build_witness_explicit(q);
  CHECK(verify_certificate(certificate_from_json(Json::parse(to_json(ex).dump()))));
}

TEST_CASE("report shapes") {
  const auto r = detect_sliding(Rational(4));
  const Json j = to_json(r);
  CHECK(j["slides"] == true);
  CHECK(j["witness"]["W"].dump() == "[2,0]");
  CHECK(to_json(exact_S(Rational(1)))["s"] == 1);
  CHECK(to_json(PellSolution{3, 5}).dump() == R"({"v":"3","u":"5"})");
}

#include <doctest.h>

#include "fields.hpp"
#include "vhf/field_io.hpp"

using namespace vhf;
using namespace testfields;

TEST_CASE("field definitions round trip through JSON") {
  const auto j = Json::parse(R"({"p":5,"f":1,"e":2,"eis":[-5,0,1],"h":[0,1],"N":12,"n":1})");
  const FieldSpec s = field_spec_from_json(j);
  CHECK(s.p == 5);
  CHECK(s.e == 2);
  CHECK(s.eis.size() == 3);
  CHECK(to_json(s) == j);
  CHECK(field_spec_from_json(to_json(s)).eis == s.eis);

  const auto u = Json::parse(R"({"p":2,"f":2,"eis":[[-2],[1]],"h":[1,1,1]})");
  const FieldSpec t = field_spec_from_json(u);
  CHECK(t.e == 1);
  CHECK(t.N == 12);
  CHECK(FieldModel::make(t)->q() == 4);
  // big integers may be given as strings
  CHECK(field_spec_from_json(Json::parse(R"({"p":"5","eis":["-5","1"]})")).p == 5);
}

TEST_CASE("malformed field definitions") {
  auto kind = [](const std::string& text) {
    try {
      FieldModel::make(load_field_spec(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::AxiomViolation;  // sentinel: nothing raised
  };
  CHECK(kind(R"({"p":5,"eis":[-5,0,1],"bogus":1})") == ErrorKind::InvalidInput);
  CHECK(kind(R"({"p":5})") == ErrorKind::InvalidInput);
  CHECK(kind(R"({"p":5,"eis":[-5,0,1],"e":3})") == ErrorKind::InvalidInput);
  CHECK(kind(R"({"p":5,"eis":[-25,0,1]})") == ErrorKind::NotEisenstein);
  CHECK(kind(R"({"p":2,"f":2,"eis":[[-2],[1]],"h":[1,0,1]})") == ErrorKind::NotIrreducible);
  CHECK(kind(R"({"p":5,"eis":[-5,1],"N":3})") == ErrorKind::PrecisionTooSmall);
  CHECK(kind("{not json") == ErrorKind::InvalidInput);
  CHECK(kind("/nonexistent/field.json") == ErrorKind::InvalidInput);
}

TEST_CASE("element expressions") {
  const Field k = ramified(5, {-5, 0, 1});
  CHECK(parse_element(k, "10") == I(k, 10));
  CHECK(parse_element(k, "pi^2") == I(k, 5));
  CHECK(parse_element(k, "π * π - p") == FieldElem::zero(k));
  CHECK(parse_element(k, "(1 + pi)^-1 * (1 + pi)") == I(k, 1));
  CHECK(parse_element(k, "-3 + 2*pi") == I(k, -3) + I(k, 2) * Pi(k));
  CHECK(*parse_element(k, "1/pi^3").valuation() == -3);
  for (const char* bad : {"1 +", "2 ** 3", "y", "(1", "x"}) {
    try {
      parse_element(k, bad);
      FAIL(bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidInput);
    }
  }
  CHECK_THROWS_AS(parse_element(k, "1/0"), Error);

  const Field f4 = unramified(2, {1, 1, 1});
  CHECK(parse_element(f4, "x^2 + x + 1").is_zero());
  CHECK(parse_element(f4, "x^3") == I(f4, 1));
}

TEST_CASE("Gauss expressions") {
  const GaussElem a = parse_gauss(2, 6, "(1)/(1+t)");
  CHECK(a * GaussElem::from_polys(2, 6, {1, 1}, {1}) == GaussElem::from_int(2, 6, 1));
  CHECK(parse_gauss(3, 6, "t^3 + 2") == GaussElem::t(3, 6).pow(3) + GaussElem::from_int(3, 6, 2));
  CHECK(parse_gauss(2, 6, "2*(t - 1)^2").valuation() == 1);
  CHECK_THROWS_AS(parse_gauss(2, 6, "1/t/t"), Error);
  CHECK_THROWS_AS(parse_gauss(2, 6, "s"), Error);
}

TEST_CASE("class JSON") {
  const Hyperfield h(qp(2), 3);
  for (const auto& c : h.grid(2)) CHECK(class_from_json(h, to_json(h, c)) == c);
  const auto j = to_json(h, h.multiadd(h.one(), h.one()));
  CHECK(j["radius"] == 3);
  CHECK(j["contains_zero"] == false);
}

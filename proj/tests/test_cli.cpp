#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "vhf/field_io.hpp"

using vhf::Json;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = vhf::cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

Json call_json(std::vector<std::string> args) {
  args.push_back("--json");
  const Out r = call(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("bounds report") {
  const Json j = call_json({"bounds", "--field", "fields/q2sqrt2.json"});
  CHECK(j["M_p1"] == "3/2");
  CHECK(j["M_direct"] == "3");
  CHECK(j["exceeds_strong_bound"] == true);
  CHECK(j["n_min_conservative"] == 13);
  CHECK(call_json({"bounds", "--field", "fields/q5sqrt5.json"})["M_p1"] == "1/2");
}

TEST_CASE("inline field definitions and elements") {
  const Json j = call_json({"field", "--field", R"({"p":3,"eis":[-3,1]})", "--elem", "9/2", "--elem", "0"});
  CHECK(j["elements"][0]["valuation"] == 2);
  CHECK(j["elements"][1]["valuation"] == "inf");
  CHECK(j["q"] == "3");
}

TEST_CASE("hyperfield commands") {
  const Json ax = call_json({"hf", "axioms", "--field", "fields/q5.json", "--n", "1", "--window", "3"});
  CHECK(ax["all_pass"] == true);
  CHECK(ax["rho"] == 1);
  CHECK(ax["hyperfield"].size() == 8);
  CHECK(ax["valued"].size() == 5);
  const Json s = call_json({"hf", "add", "--field", "fields/q2.json", "--n", "2", "--a", "1", "--b", "1"});
  CHECK(s["radius"] == 2);
  CHECK(s["members"] == Json::array({"pi^1 * (1)", "pi^1 * (3)"}));
  CHECK(call_json({"hf", "residue", "--field", "fields/q4.json"})["table"].size() == 4);
  CHECK(call_json({"hf", "class", "--field", "fields/q5sqrt5.json", "--elem", "5"})["gamma"] == 2);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"bounds"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"bounds", "--field", "missing.json"}).code == 2);
  const Out syn = call({"logic", "eval", "--model", "fields/q5.json", "--sentence", "exists x. x ="});
  CHECK(syn.code == 2);
  CHECK(syn.err.find("SyntaxError") != std::string::npos);
  const Out budget = call({"logic", "eval", "--model", "fields/q5.json", "--node-cap", "10", "--sentence",
                           "forall x, y. x * y = y * x"});
  CHECK(budget.code == 3);
  CHECK(budget.err.find("BudgetExceeded") != std::string::npos);
  CHECK(call({"gauss", "expand", "--p", "2", "--level", "5", "--elem", "t"}).code == 3);
}

TEST_CASE("logic commands") {
  const Out t = call({"logic", "translate", "--p", "2", "--e", "1", "--n", "2", "--sentence", "x | y"});
  CHECK(t.out == "nu(x) <= nu(y)\n");
  const Json c = call_json({"logic", "classify", "--sentence", "forall x. not (x = 0)"});
  CHECK(c["positive"] == false);
  CHECK(c["quantifier_depth"] == 1);
  const Json e = call_json({"logic", "eval", "--model", "fields/q5sqrt5.json", "--sentence", "exists x. x * x = phat"});
  CHECK(e["result"] == "True");
  CHECK(e["witness"][0]["var"] == "x");
}

TEST_CASE("hom commands and byte-stable output") {
  const std::vector<std::string> search = {"hom", "search", "--src", "fields/q5sqrt5.json", "--dst",
                                           "fields/q5sqrt20.json", "--n", "1", "--isos", "--json"};
  const Out a = call(search), b = call(search);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["count"] == 2);
  // a search result is itself a valid spec
  const Json lift = call_json({"hom", "lift", "--spec", j["homs"][0].dump()});
  CHECK(lift["pi_image_power_e"] == "5");
  CHECK(lift["eisenstein_at_pi_image_zero"] == true);
  CHECK(lift["agreement"]["mismatches"] == 0);
  CHECK(call_json({"hom", "check", "--spec", j["homs"][1].dump()})["all_pass"] == true);
  const Json k = call_json({"hom", "krasner", "--field", "fields/q2.json", "--n", "1"});
  CHECK(k["all_pass"] == false);
  CHECK(k["conditions"][3]["witness"] == "([2], [1])");
}

TEST_CASE("presets reproduce their digests") {
  const Json list = call_json({"preset", "list"});
  REQUIRE(list["presets"].size() >= 6);
  for (const auto& p : list["presets"]) {
    const Json r = call_json({"preset", "run", p["name"].get<std::string>()});
    CHECK_MESSAGE(r["all_match"] == true, p["name"]);
  }
  CHECK(call({"preset", "run", "no-such-preset"}).code == 2);
}

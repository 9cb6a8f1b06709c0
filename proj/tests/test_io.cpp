#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kps/io.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace kps;
using nlohmann::json;

namespace {

json toy_runspec() {
  return json::parse(R"({
    "designs": [
      {"design": "pbib2", "scheme": {"scheme": "gd", "a": 2, "f": 3}},
      {"design": "explicit", "v": 9, "blocks": [
        [4,7,2],[7,1,5],[1,4,8],[5,8,3],[8,2,6],[2,5,9],
        [6,9,1],[9,3,4],[3,6,7],[1,2,3],[4,5,6],[7,8,9]]}
    ]
  })");
}

}  // namespace

TEST_CASE("scheme fragments") {
  AssociationScheme gd = scheme_from_json(
      json::parse(R"({"scheme":"gd","a":2,"f":3})"));
  CHECK(gd.family == AssociationScheme::Family::group_divisible);
  CHECK(gd.v_star == 6);

  AssociationScheme tri = scheme_from_json(
      json::parse(R"({"scheme":"triangular","m":5})"));
  CHECK(tri.family == AssociationScheme::Family::triangular);
  CHECK(tri.v_star == 10);

  // omitted squares fall back to the cyclic family
  AssociationScheme lat = scheme_from_json(
      json::parse(R"({"scheme":"latin","p":5,"k":3})"));
  CHECK(lat.family == AssociationScheme::Family::latin_square);
  CHECK(lat.v_star == 25);
  CHECK(lat.theta[1] == 12);

  AssociationScheme given = scheme_from_json(json::parse(
      R"({"scheme":"latin","p":3,"k":3,"squares":[[[0,1,2],[1,2,0],[2,0,1]]]})"));
  CHECK(given.v_star == 9);
  CHECK(given.theta[2] == 6);

  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"scheme":"unknown"})")),
                  SpecError);
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"scheme":"gd","a":2})")),
                  SpecError);
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"a":2,"f":3})")),
                  SpecError);
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"scheme":"gd","a":"x","f":3})")),
                  SpecError);
  // composite p without explicit squares cannot use the cyclic fallback
  CHECK_THROWS_AS(scheme_from_json(json::parse(R"({"scheme":"latin","p":6,"k":3})")),
                  std::invalid_argument);
}

TEST_CASE("design fragments") {
  BlockDesign pairing = design_from_json(
      json::parse(R"({"design":"pbib2","scheme":{"scheme":"gd","a":2,"f":3}})"));
  CHECK(pairing.v_star == 6);
  CHECK(pairing.blocks.size() == 9);

  BlockDesign lat = design_from_json(
      json::parse(R"({"design":"latin_pbib","p":5,"k":3})"));
  CHECK(lat.v_star == 25);
  CHECK(lat.blocks.size() == 15);

  BlockDesign bose = design_from_json(json::parse(R"({"design":"sts","g":4})"));
  CHECK(bose.v_star == 9);
  CHECK(bose.blocks.size() == 12);

  // g divisible by three dispatches to the Skolem construction
  BlockDesign skolem = design_from_json(json::parse(R"({"design":"sts","g":6})"));
  CHECK(skolem.v_star == 13);
  CHECK(skolem.blocks.size() == 26);

  CHECK_THROWS_AS(design_from_json(json::parse(R"({"design":"sts","g":5})")),
                  SpecError);
  CHECK_THROWS_AS(design_from_json(json::parse(R"({"design":"bogus"})")),
                  SpecError);
  CHECK_THROWS_AS(design_from_json(json::parse(R"({"v":9})")), SpecError);
}

TEST_CASE("explicit designs preserve order and infer the role") {
  BlockDesign d = design_from_json(toy_runspec()["designs"][1]);
  CHECK(d.v_star == 9);
  CHECK(d.k_star == 3);
  CHECK(d.r_star == 4);
  REQUIRE(d.blocks.size() == 12);

  // 1-based unsorted input arrives 0-based, sorted within each block,
  // block order untouched
  CHECK(d.blocks[0] == std::vector<int>{1, 3, 6});
  CHECK(d.blocks[9] == std::vector<int>{0, 1, 2});
  REQUIRE(d.role.has_value());
  CHECK(d.role->kind == RoleKind::bib);
  CHECK(d.role->lambda == 1);

  json out = design_to_json(d);
  CHECK(out["design"] == "explicit");
  CHECK(out["v"] == 9);
  CHECK(out["blocks"][0] == json::parse("[2,4,7]"));

  BlockDesign back = design_from_json(out);
  CHECK(back.blocks == d.blocks);
  CHECK(back.v_star == d.v_star);
  REQUIRE(back.role.has_value());
  CHECK(back.role->kind == RoleKind::bib);

  CHECK_THROWS_AS(design_from_json(json::parse(
                      R"({"design":"explicit","v":4,"blocks":[[1,1],[2,3]]})")),
                  SpecError);
  CHECK_THROWS_AS(design_from_json(json::parse(
                      R"({"design":"explicit","v":4,"blocks":[[0,1],[2,3]]})")),
                  SpecError);
  CHECK_THROWS_AS(design_from_json(json::parse(
                      R"({"design":"explicit","v":4,"blocks":[[1,5],[2,3]]})")),
                  SpecError);
  CHECK_THROWS_AS(design_from_json(json::parse(
                      R"({"design":"explicit","v":4,"blocks":[[1,2],[3,4],[1,2,3]]})")),
                  SpecError);
  CHECK_THROWS_AS(design_from_json(json::parse(
                      R"({"design":"explicit","v":4,"blocks":[[1,2],[1,2]]})")),
                  SpecError);
}

TEST_CASE("run specs apply defaults and overrides") {
  RunSpec spec = runspec_from_json(toy_runspec());
  CHECK(spec.designs.size() == 2);
  CHECK(spec.q == 0);
  CHECK(spec.etas == std::vector<std::int64_t>{1, 2, 3, 4, 5, 10, 15, 20});
  CHECK(spec.ss == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 8, 10});
  CHECK(spec.beta_mode == BetaMode::approx);
  CHECK(spec.fail_mode == FailMode::approx);
  CHECK(spec.oracle.trials == 100000);
  CHECK(spec.oracle.seed == 42);
  CHECK(spec.oracle.shards == 1);

  json full = toy_runspec();
  full["q"] = 2;
  full["etas"] = {1, 3};
  full["s"] = {2};
  full["beta_mode"] = "exact";
  full["fail_mode"] = "exact";
  full["trials"] = 5000;
  full["seed"] = 7;
  full["shards"] = 3;
  RunSpec sp = runspec_from_json(full);
  CHECK(sp.q == 2);
  CHECK(sp.etas == std::vector<std::int64_t>{1, 3});
  CHECK(sp.ss == std::vector<std::int64_t>{2});
  CHECK(sp.beta_mode == BetaMode::exact);
  CHECK(sp.fail_mode == FailMode::exact);
  CHECK(sp.oracle.trials == 5000);
  CHECK(sp.oracle.seed == 7);
  CHECK(sp.oracle.shards == 3);

  CHECK_THROWS_AS(runspec_from_json(json::parse(R"({"designs":[]})")),
                  SpecError);
  CHECK_THROWS_AS(runspec_from_json(json::parse(R"({"q":2})")), SpecError);
  json bad = toy_runspec();
  bad["q"] = 0;
  CHECK_THROWS_AS(runspec_from_json(bad), SpecError);
  bad = toy_runspec();
  bad["beta_mode"] = "sometimes";
  CHECK_THROWS_AS(runspec_from_json(bad), SpecError);
  bad = toy_runspec();
  bad["trials"] = 0;
  CHECK_THROWS_AS(runspec_from_json(bad), SpecError);
  bad = toy_runspec();
  bad["etas"] = {1, "x"};
  CHECK_THROWS_AS(runspec_from_json(bad), SpecError);
}

TEST_CASE("kps assembly from a run spec") {
  RunSpec spec = runspec_from_json(toy_runspec());
  Kps k = kps_from_runspec(spec);
  CHECK(k.q == 2);
  CHECK(k.n == 54);
  CHECK(k.k == 7);
  CHECK(k.v == 21);

  // a mismatched explicit threshold propagates to the builder
  RunSpec wrong = spec;
  wrong.q = 1;
  CHECK_THROWS_AS(kps_from_runspec(wrong), std::invalid_argument);
}

TEST_CASE("rational rendering") {
  CHECK(rational_string(BigRat(37, 53)) == "37/53");
  CHECK(rational_string(BigRat(2)) == "2");
  CHECK(rational_string(BigRat(0)) == "0");
  CHECK(rational_string(BigRat(-3, 4)) == "-3/4");
}

TEST_CASE("reports render deterministically") {
  Kps k = kps_from_runspec(runspec_from_json(toy_runspec()));
  const std::vector<std::int64_t> etas = {1, 2, 3};
  const std::vector<std::int64_t> ss = {1, 2, 3};
  ConnectivityReport conn = connectivity_report(k, etas, BetaMode::approx);
  ResiliencyReport res = resiliency_report(k, ss, FailMode::approx);

  std::string csv = report_csv(k, conn, res, 4);
  CHECK(csv == report_csv(k, conn, res, 4));

  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() >= 10);
  CHECK(rows[0] == std::string("# ") + kToolVersion + " schema 1");
  CHECK(rows[1] == "metric,parameter,value");
  bool pr1_row = false, fail_row = false, warn_row = false;
  for (const std::string& r : rows) {
    if (r == "pr1,,0.6981") pr1_row = true;
    if (r == "fail,s=1,0.0582") fail_row = true;
    if (r.rfind("# warning s=3:", 0) == 0) warn_row = true;
  }
  CHECK(pr1_row);
  CHECK(fail_row);
  CHECK(warn_row);

  json rep = report_json(k, conn, res, 4);
  CHECK(rep == report_json(k, conn, res, 4));
  CHECK(rep["schema"] == 1);
  CHECK(rep["tool"] == kToolVersion);
  CHECK(rep["v"] == 21);
  CHECK(rep["n"] == 54);
  CHECK(rep["k"] == 7);
  CHECK(rep["q"] == 2);
  CHECK(rep["pr1"]["decimal"] == "0.6981");
  CHECK(rep["pr1"]["rational"] == "37/53");
  REQUIRE(rep["pr"].size() == 3);
  CHECK(rep["pr"][0]["eta"] == 1);
  CHECK(rep["pr"][0]["decimal"] == "0.8665");
  REQUIRE(rep["fail"].size() == 3);
  CHECK(rep["fail"][0]["s"] == 1);
  CHECK(rep["fail"][0]["precondition_ok"] == true);
  CHECK(rep["fail"][2]["precondition_ok"] == false);
  CHECK(rep["fail"][2]["warning"].is_string());
  REQUIRE(rep["mu"].size() == 1);
  CHECK(rep["mu"][0]["tuple"] == "12");
  CHECK(rep["mu"][0]["count"] == 29);
}

#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "netlocal/errors.hpp"
#include "netlocal/evaluator.hpp"
#include "netlocal/io.hpp"

using namespace netlocal;

TEST_CASE("behavior JSON round trip") {
  for (auto kind : {ScenarioKind::P22, ScenarioKind::P14}) {
    const auto b = evaluate_chain(standard_scenario(3, kind, 0.77));
    const auto j = io::behavior_to_json(b);
    CHECK(j["schema_version"] == io::kSchemaVersion);
    CHECK(j["p"].size() == b.table().size());
    const auto back = io::behavior_from_json(nlohmann::json::parse(j.dump()));
    CHECK(max_abs_diff(back, b) == 0.0);
    const auto r0 = analyze(b), r1 = analyze(back);
    CHECK(std::abs(r0.I - r1.I) <= 1e-12);
    CHECK(std::abs(r0.J - r1.J) <= 1e-12);
  }
}

TEST_CASE("behavior CSV round trip") {
  const auto b = evaluate_chain(standard_scenario(2, ScenarioKind::P14, 0.9));
  std::stringstream ss;
  io::write_behavior_csv(ss, b);
  const auto back = io::read_behavior_csv(ss);
  CHECK(back.kind() == ScenarioKind::P14);
  CHECK(max_abs_diff(back, b) <= 1e-16);
}

TEST_CASE("malformed documents") {
  nlohmann::json j = io::behavior_to_json(Behavior::uniform(ScenarioKind::P22, 2));
  j["p"].erase(0);
  CHECK_THROWS_AS(io::behavior_from_json(j), Error);
  j = io::behavior_to_json(Behavior::uniform(ScenarioKind::P22, 2));
  j["schema_version"] = 99;
  CHECK_THROWS_AS(io::behavior_from_json(j), Error);
  std::stringstream bad("x_index,a_index\n");
  CHECK_THROWS_AS(io::read_behavior_csv(bad), Error);
}

TEST_CASE("scenario JSON round trip") {
  const std::vector<double> al{0.6, 0.7, 0.8};
  const auto s = standard_scenario(3, ScenarioKind::P22, al);
  const auto j = io::scenario_to_json(s);
  CHECK(j["operators"]["intermediate"].size() == 2);
  const auto back = io::scenario_from_json(j);
  CHECK(max_abs_diff(evaluate_chain(back), evaluate_chain(s)) <= 1e-15);

  // alphas only
  const nlohmann::json minimal = {{"schema", "netlocal.scenario"}, {"schema_version", 1},
                                  {"n", 2}, {"kind", "p14"}, {"alphas", {0.5, 1.0}}};
  const auto m = io::scenario_from_json(minimal);
  CHECK(m.sources[0].alpha == 0.5);
}

TEST_CASE("reports") {
  const auto r = io::report_to_json(bound_values(-0.5, 0.5));
  CHECK(r["I"] == -0.5);
  CHECK(r["abs_I"] == 0.5);
  CHECK(r["violates_nlocal"] == true);
  const auto m = io::model_to_json(tightness_model_p14(2, 0.3));
  CHECK(m["responses"].size() == 3);
  CHECK(m["note"].get<std::string>().find("diagonal") != std::string::npos);
  const auto d = io::decomposition_to_json(decomposition_check(2, ScenarioKind::P22));
  CHECK(d["exact"] == true);
}

TEST_CASE("behavior files") {
  const auto b = evaluate_chain(standard_scenario(2, ScenarioKind::P22, 1.0));
  const std::string jp = "io_test_behavior.json", cp = "io_test_behavior.csv";
  io::write_text_file(jp, io::behavior_to_json(b).dump());
  std::ostringstream os;
  io::write_behavior_csv(os, b);
  io::write_text_file(cp, os.str());
  CHECK(max_abs_diff(io::read_behavior_file(jp), b) == 0.0);
  CHECK(max_abs_diff(io::read_behavior_file(cp), b) <= 1e-16);
  std::remove(jp.c_str());
  std::remove(cp.c_str());
  CHECK_THROWS_AS(io::read_behavior_file("does/not/exist.json"), Error);
}

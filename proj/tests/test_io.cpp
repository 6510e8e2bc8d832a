#include "doctest.h"

#include "seqtc/io.hpp"

#include <sstream>

using namespace seqtc;
using nlohmann::json;

namespace {

json sample_scenario_doc()
{
    return json::parse(R"({
      "d": 3,
      "mode": "general",
      "obstacles": [[0,0,0],[1,0,0]],
      "robots": [
        {"targets": [[2,0.5,0],[3,0.5,0]]},
        {"targets": [[4,1,0],[5,1,0],[6,1,0]]}
      ],
      "options": {"tau_proj": 1e-9, "epsilon_connector": 0.25, "tolerance": 1e-7}
    })");
}

} // namespace

TEST_CASE("scenario parsing and round trip")
{
    PlannerOptions opts;
    Scenario sc = scenario_from_json(sample_scenario_doc(), &opts);
    CHECK(sc.spec().dimension() == 3);
    CHECK(sc.spec().obstacle_count() == 2);
    CHECK(sc.spec().robot_count() == 2);
    CHECK(sc.targets()[1].size() == 3);
    CHECK(opts.tau_proj == 1e-9);
    CHECK(opts.epsilon_connector == 0.25);
    CHECK(opts.tolerance == 1e-7);

    json again = scenario_to_json(sc);
    CHECK(again["d"] == 3);
    CHECK(again["mode"] == "general");
    CHECK(again["obstacles"] == sample_scenario_doc()["obstacles"]);
    CHECK(again["robots"] == sample_scenario_doc()["robots"]);
}

TEST_CASE("field-level diagnostics")
{
    json doc = sample_scenario_doc();
    doc.erase("d");
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), "d: missing required field", ParseError);

    doc = sample_scenario_doc();
    doc["obstacles"][1] = json::array({1, 0});
    CHECK_THROWS_WITH_AS(scenario_from_json(doc),
                         "obstacles[1]: expected an array of 3 numbers", ParseError);

    doc = sample_scenario_doc();
    doc["robots"][0].erase("targets");
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), "targets: missing required field", ParseError);

    doc = sample_scenario_doc();
    doc["mode"] = "diagonal";
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), "mode: unknown mode \"diagonal\"", ParseError);

    doc = sample_scenario_doc();
    doc["obstacles"][1] = doc["obstacles"][0];
    CHECK_THROWS_AS(scenario_from_json(doc), ParseError);
}

TEST_CASE("path documents round trip through json")
{
    Scenario sc = scenario_from_json(sample_scenario_doc());
    PlannedPath path = plan(sc);
    json doc = path_to_json(path);
    PlannedPath back = path_from_json(doc);

    CHECK(back.schedule == path.schedule);
    REQUIRE(back.robots.size() == path.robots.size());
    for (std::size_t i = 0; i < path.robots.size(); ++i) {
        REQUIRE(back.robots[i].size() == path.robots[i].size());
        for (std::size_t k = 0; k < path.robots[i].size(); ++k) {
            CHECK(back.robots[i][k].t == path.robots[i][k].t);
            CHECK(back.robots[i][k].x == path.robots[i][k].x);
        }
    }
    CHECK(back.cell.c == path.cell.c);
    CHECK(back.cell.sigma == path.cell.sigma);
    CHECK(back.delta == path.delta);

    ValidationReport a = validate(path, sc, 128, 1e-7);
    ValidationReport b = validate(back, sc, 128, 1e-7);
    CHECK(a.pass == b.pass);
    CHECK(a.min_robot_robot == b.min_robot_robot);

    json rep = report_to_json(a);
    CHECK(rep["pass"] == true);
    CHECK(rep.contains("min_robot_robot_distance"));
    CHECK(rep.contains("max_stopped_node_violation"));
}

TEST_CASE("deterministic serialization")
{
    Scenario sc = scenario_from_json(sample_scenario_doc());
    std::string a = path_to_json(plan(sc)).dump(2);
    std::string b = path_to_json(plan(sc)).dump(2);
    CHECK(a == b);
}

TEST_CASE("csv emission")
{
    Scenario sc = scenario_from_json(sample_scenario_doc());
    PlannedPath path = plan(sc);
    std::ostringstream os1, os2;
    write_csv_samples(os1, path, 9);
    write_csv_samples(os2, path, 9);
    CHECK(os1.str() == os2.str());

    std::istringstream in(os1.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,robot,x1,x2,x3");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty())
            ++rows;
    // (2 intervals * 9 samples - 1 shared node) rows per robot
    CHECK(rows == 17 * 2);
}
